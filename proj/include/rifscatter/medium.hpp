#pragma once

#include <array>
#include <complex>

#include "rifscatter/errors.hpp"
#include "rifscatter/units.hpp"

namespace rif {

using cdouble = std::complex<double>;

// Dielectric modeled by three polarization fields, each with an elastic
// constant kappa_i and a resonance at vacuum wavelength lambda_i. The
// constructor caches the oscillator strengths b_i = 4*pi*kappa_i and the
// resonance angular frequencies in internal units.
struct SellmeierMedium {
  std::array<double, 3> resonance_wavelengths{};  // meters, strictly decreasing
  std::array<double, 3> elastic_constants{};      // kappa_i >= 0
  std::array<double, 3> b{};                      // 4*pi*kappa_i
  std::array<double, 3> omega_r{};                // internal units

  SellmeierMedium(const std::array<double, 3>& wavelengths,
                  const std::array<double, 3>& kappas);

  static SellmeierMedium fused_silica();
  static SellmeierMedium vacuum();
};

// Inertial frame comoving with the index front, moving at speed u (fraction
// of c) toward positive x in the lab frame.
struct FrontFrame {
  double u = 0.0;
  double gamma = 1.0;

  FrontFrame() = default;
  explicit FrontFrame(double u_fraction);
};

// Plane-wave phase parameters exp(i(k x - omega t)), internal units. Complex
// values describe evanescent waves.
struct LabWave {
  cdouble omega;
  cdouble k;
};

// Same wave in the comoving frame, exp(i(k' zeta - omega' tau)).
struct ComovingWave {
  cdouble omega;
  cdouble k;
};

// Step profile of the refractive index: unperturbed medium on the right of
// the front, uniformly scaled medium (kappa -> sigma*kappa, lambda ->
// sqrt(sigma)*lambda) on the left.
struct IndexStep {
  SellmeierMedium right;
  SellmeierMedium left;
  double delta_n = 0.0;
  double sigma = 1.0;
  double n_ref = 0.0;  // reference index used to set sigma
};

struct MediumOptions {
  double guard_band = 1e-3;  // relative exclusion zone around each resonance
};

// Internal-unit primitives. `w` is an internal angular frequency.
double chi(const SellmeierMedium& m, double w);
cdouble chi(const SellmeierMedium& m, cdouble w);
double n_squared(const SellmeierMedium& m, double w);
double static_index(const SellmeierMedium& m);
double refractive_index_w(const SellmeierMedium& m, double w, const MediumOptions& opt = {});
double group_index_w(const SellmeierMedium& m, double w);
double group_velocity_w(const SellmeierMedium& m, double w);
cdouble dispersion_residual_w(const SellmeierMedium& m, cdouble w, cdouble k);

// SI boundary. Frequencies in rad/s, wavenumbers in rad/m, velocities in m/s.
double refractive_index(const SellmeierMedium& m, double omega_si, const MediumOptions& opt = {});
double group_velocity(const SellmeierMedium& m, double omega_si);
cdouble dispersion_residual(const SellmeierMedium& m, cdouble omega_si, cdouble k_si);

// Builds the two-sided step for a front of height delta_n. When n_ref <= 0
// the static index of the right medium is used as the reference.
IndexStep scale_medium(const SellmeierMedium& right, double delta_n, double n_ref = 0.0);

ComovingWave boost_to_comoving(const LabWave& w, const FrontFrame& f);
LabWave boost_to_lab(const ComovingWave& w, const FrontFrame& f);

}  // namespace rif
