#include "rifscatter/medium.hpp"

#include <cmath>
#include <sstream>

namespace rif {

SellmeierMedium::SellmeierMedium(const std::array<double, 3>& wavelengths,
                                 const std::array<double, 3>& kappas)
    : resonance_wavelengths(wavelengths), elastic_constants(kappas) {
  for (int i = 0; i < 3; ++i) {
    if (!(wavelengths[i] > 0.0)) {
      throw ValidationError("resonance wavelengths must be positive");
    }
    if (!(kappas[i] >= 0.0)) {
      throw ValidationError("elastic constants must be nonnegative");
    }
    if (i > 0 && !(wavelengths[i] < wavelengths[i - 1])) {
      throw ValidationError("resonance wavelengths must be strictly decreasing");
    }
    b[i] = 4.0 * std::numbers::pi * kappas[i];
    omega_r[i] = units::wavelength_to_omega(wavelengths[i]);
  }
}

SellmeierMedium SellmeierMedium::fused_silica() {
  return SellmeierMedium({9904e-9, 116e-9, 68.5e-9}, {0.07142, 0.03246, 0.05540});
}

SellmeierMedium SellmeierMedium::vacuum() {
  return SellmeierMedium({9904e-9, 116e-9, 68.5e-9}, {0.0, 0.0, 0.0});
}

FrontFrame::FrontFrame(double u_fraction) : u(u_fraction) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw ValidationError("front speed must satisfy 0 <= u < c");
  }
  gamma = 1.0 / std::sqrt(1.0 - u * u);
}

double chi(const SellmeierMedium& m, double w) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    s += m.b[i] * o2 / (o2 - w * w);
  }
  return s;
}

cdouble chi(const SellmeierMedium& m, cdouble w) {
  cdouble s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    s += m.b[i] * o2 / (o2 - w * w);
  }
  return s;
}

double n_squared(const SellmeierMedium& m, double w) { return 1.0 + chi(m, w); }

double static_index(const SellmeierMedium& m) {
  return std::sqrt(1.0 + m.b[0] + m.b[1] + m.b[2]);
}

double refractive_index_w(const SellmeierMedium& m, double w, const MediumOptions& opt) {
  const double a = std::abs(w);
  for (int i = 0; i < 3; ++i) {
    if (m.elastic_constants[i] > 0.0 &&
        std::abs(a - m.omega_r[i]) < opt.guard_band * m.omega_r[i]) {
      std::ostringstream msg;
      msg << "frequency " << a << " within guard band of resonance " << m.omega_r[i];
      throw ResonanceProximityError(msg.str());
    }
  }
  const double n2 = n_squared(m, a);
  if (!(n2 > 0.0)) {
    std::ostringstream msg;
    msg << "no propagating wave at frequency " << a << " (n^2 = " << n2 << ")";
    throw AnomalousBandError(msg.str());
  }
  return std::sqrt(n2);
}

double group_index_w(const SellmeierMedium& m, double w) {
  const double a = std::abs(w);
  const double n = refractive_index_w(m, a);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    const double d = o2 - a * a;
    s += m.b[i] * o2 / (d * d);
  }
  return n + a * a * s / n;
}

double group_velocity_w(const SellmeierMedium& m, double w) {
  return 1.0 / group_index_w(m, w);
}

cdouble dispersion_residual_w(const SellmeierMedium& m, cdouble w, cdouble k) {
  const cdouble w2 = w * w;
  cdouble pi_all = 1.0;
  for (int i = 0; i < 3; ++i) {
    pi_all *= m.omega_r[i] * m.omega_r[i] - w2;
  }
  cdouble rhs = w2 * pi_all;
  for (int i = 0; i < 3; ++i) {
    cdouble pi_other = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) {
        pi_other *= m.omega_r[j] * m.omega_r[j] - w2;
      }
    }
    rhs += w2 * m.b[i] * m.omega_r[i] * m.omega_r[i] * pi_other;
  }
  const cdouble lhs = k * k * pi_all;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0.0) {
    return 0.0;
  }
  return (lhs - rhs) / scale;
}

double refractive_index(const SellmeierMedium& m, double omega_si, const MediumOptions& opt) {
  return refractive_index_w(m, units::omega_to_internal(omega_si), opt);
}

double group_velocity(const SellmeierMedium& m, double omega_si) {
  return group_velocity_w(m, units::omega_to_internal(omega_si)) * units::c_si;
}

cdouble dispersion_residual(const SellmeierMedium& m, cdouble omega_si, cdouble k_si) {
  return dispersion_residual_w(m, omega_si / units::omega_unit_si,
                               k_si * units::length_unit_si);
}

IndexStep scale_medium(const SellmeierMedium& right, double delta_n, double n_ref) {
  if (!(delta_n >= 0.0)) {
    throw ValidationError("index step must be nonnegative");
  }
  const double nr = n_ref > 0.0 ? n_ref : static_index(right);
  if (!(nr > 1.0)) {
    throw ValidationError("reference index must exceed 1");
  }
  const double sigma = 1.0 + 2.0 * nr * delta_n / (nr * nr - 1.0);
  const double root = std::sqrt(sigma);
  std::array<double, 3> wl = right.resonance_wavelengths;
  std::array<double, 3> kp = right.elastic_constants;
  for (int i = 0; i < 3; ++i) {
    wl[i] *= root;
    kp[i] *= sigma;
  }
  IndexStep step{right, SellmeierMedium(wl, kp), delta_n, sigma, nr};
  return step;
}

ComovingWave boost_to_comoving(const LabWave& w, const FrontFrame& f) {
  return {f.gamma * (w.omega - f.u * w.k), f.gamma * (w.k - f.u * w.omega)};
}

LabWave boost_to_lab(const ComovingWave& w, const FrontFrame& f) {
  return {f.gamma * (w.omega + f.u * w.k), f.gamma * (w.k + f.u * w.omega)};
}

}  // namespace rif
