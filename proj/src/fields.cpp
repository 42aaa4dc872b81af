#include "rifscatter/fields.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rif {

namespace {

constexpr double pi = std::numbers::pi;

void check_same_frequency(const PolarizedMode& a, const PolarizedMode& b) {
  const double wa = a.root.comoving.omega.real();
  const double wb = b.root.comoving.omega.real();
  if (std::abs(wa - wb) > 1e-9 * std::max({1.0, std::abs(wa), std::abs(wb)})) {
    throw ValidationError("mode pairing requires equal comoving frequencies");
  }
}

cdouble eta_product(const Vector8cd& a, const Vector8cd& b) {
  cdouble z1 = 0.0;
  cdouble z2 = 0.0;
  for (int j = 0; j < 4; ++j) {
    z1 += std::conj(a[j]) * b[4 + j];
    z2 += std::conj(a[4 + j]) * b[j];
  }
  return cdouble(0.0, 1.0) * (z1 - z2);
}

cdouble flux_product(const PolarizedMode& a, const PolarizedMode& b, double u) {
  const cdouble i1(0.0, 1.0);
  const cdouble ka = a.root.comoving.k;
  const cdouble kb = b.root.comoving.k;
  cdouble s = (-i1 / (4.0 * pi)) * (kb + std::conj(ka)) * std::conj(a.v[0]) * b.v[0];
  for (int j = 1; j < 4; ++j) {
    s -= u * (std::conj(a.v[j]) * b.v[4 + j] - std::conj(a.v[4 + j]) * b.v[j]);
  }
  return i1 * s;
}

}  // namespace

Matrix8d norm_metric() {
  Matrix8d eta = Matrix8d::Zero();
  for (int i = 0; i < 4; ++i) {
    eta(i, 4 + i) = 1.0;
    eta(4 + i, i) = -1.0;
  }
  return eta;
}

PolarizedMode polarization_vector(const SellmeierMedium& m, const ModeRoot& root,
                                  const FrontFrame& f) {
  for (double k : m.elastic_constants) {
    if (!(k > 0.0)) {
      throw ValidationError("polarization vector requires three dispersive resonances");
    }
  }
  PolarizedMode pm;
  pm.root = root;
  pm.u = f.u;
  const cdouble i1(0.0, 1.0);
  const cdouble w = root.lab.omega;
  const cdouble wp = root.comoving.omega;
  pm.v[0] = 1.0;
  pm.v[4] = -i1 * wp / (4.0 * pi);
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    const cdouble den = o2 - w * w;
    if (den == 0.0) {
      throw ValidationError("lab frequency sits exactly on a resonance");
    }
    pm.v[1 + i] = i1 * m.elastic_constants[i] * w * o2 / den;
    pm.v[5 + i] = f.gamma * o2 / den;
  }
  pm.norm_density = eta_product(pm.v, pm.v).real();
  pm.flux_density = flux_product(pm, pm, f.u).real();
  return pm;
}

cdouble scalar_product_density(const PolarizedMode& a, const PolarizedMode& b) {
  check_same_frequency(a, b);
  return eta_product(a.v, b.v);
}

cdouble flux_pairing(const PolarizedMode& a, const PolarizedMode& b) {
  check_same_frequency(a, b);
  if (std::abs(a.u - b.u) > 1e-12) {
    throw ValidationError("mode pairing requires the same front frame");
  }
  return flux_product(a, b, a.u);
}

PolarizedMode normalize(const PolarizedMode& mode, double eps_vg) {
  if (!mode.root.propagating) {
    throw NormalizationError("only propagating modes carry unit flux");
  }
  if (std::abs(mode.root.v_g_comoving) < eps_vg) {
    std::ostringstream msg;
    msg << "comoving group velocity " << mode.root.v_g_comoving
        << " too close to zero (subluminal interval edge)";
    throw NormalizationError(msg.str());
  }
  const double flux = std::abs(mode.flux_density);
  if (!(flux > 0.0) || !std::isfinite(flux)) {
    throw NormalizationError("mode flux is not positive and finite");
  }
  PolarizedMode out = mode;
  const double amp = 1.0 / std::sqrt(2.0 * pi * flux);
  const cdouble phase = std::exp(cdouble(0.0, -std::arg(mode.v[0])));
  out.v = mode.v * (amp * phase);
  out.norm_density = eta_product(out.v, out.v).real();
  out.flux_density = mode.flux_density * amp * amp;
  out.normalized = true;
  return out;
}

}  // namespace rif
