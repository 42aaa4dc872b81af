#pragma once

#include "rifscatter/scattering.hpp"

namespace rif {

// Emission spectrum in the comoving frame, sampled on a frequency grid. Flux
// columns are keyed by outgoing mode label; rows that failed to solve are
// quarantined and hold zero flux.
struct QuarantineEntry {
  int index = -1;
  double axis_value = 0.0;
  std::string reason;
};

struct MovingSpectrum {
  std::vector<double> omega_prime;          // internal units
  std::vector<std::string> columns;         // outgoing-mode label texts
  std::vector<std::vector<double>> flux;    // flux[c][i]: column c at grid point i
  std::vector<int> config;                  // configuration number per point
  std::vector<double> unitarity_residual;   // per point, 0 for quarantined rows
  std::vector<QuarantineEntry> quarantine;
};

// Spectral labels emitted in the lab frame within the optical window.
std::vector<std::string> lab_emission_labels();

// Frequency markers of the lab spectrum (internal units): band boundaries
// where a mode's comoving frequency meets a subluminal-interval edge, and the
// zero-frequency edge of the negative-norm band.
struct LabMarkers {
  double black_hole_low = 0.0;   // moR where the enhanced window opens
  double black_hole_high = 0.0;  // moR at the right interval maximum
  double white_hole_low = 0.0;   // loL where the enhanced window closes
  double white_hole_high = 0.0;  // loL at the left interval minimum
  double negative_edge = 0.0;    // noL at zero comoving frequency
};

struct LabSpectrum {
  std::vector<double> wavelength;           // meters
  std::vector<std::string> columns;         // per-mode plus "total"
  std::vector<std::vector<double>> flux;    // photons per second per meter
  LabMarkers markers;
  std::vector<QuarantineEntry> quarantine;
};

// Grid over the scattering window [0.8 * minR, 1.2 * maxR] with points
// clustered toward the interval edges and the edges themselves excluded.
std::vector<double> default_omega_prime_grid(const StepContext& ctx, int n_points);

MovingSpectrum moving_frame_spectrum(const StepContext& ctx, const std::vector<double>& grid,
                                     int jobs = 1);

// Lab-frame spectral photon flux density per unit wavelength on the given
// vacuum-wavelength grid (meters).
LabSpectrum lab_spectrum(const StepContext& ctx, const std::vector<double>& wavelengths,
                         int jobs = 1);

std::vector<double> wavelength_grid(double lambda_min, double lambda_max, int n_points);

// Total photon number radiated into the middle-optical mode over a lab
// propagation distance `length_si` (meters).
struct PhotonNumberResult {
  double photons = 0.0;
  double flux_integral = 0.0;  // integral of the flux density, internal units
  double delta_tau_si = 0.0;   // comoving interaction time, seconds
  int grid_points = 0;
};

PhotonNumberResult photon_number(const StepContext& ctx, double length_si, int n_core = 240,
                                 int jobs = 1);

// Least-squares fit of y = a * x^p on log-log axes. Requires positive data.
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  int n = 0;
};

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// Width diagnostics of the two subluminal intervals for one step height.
struct WidthResult {
  double min_left = 0.0;
  double max_left = 0.0;
  double min_right = 0.0;
  double max_right = 0.0;
  double black_hole_width = 0.0;  // span of the black-hole configuration
  double white_hole_width = 0.0;  // span of the white-hole configuration
  bool saturated = false;         // intervals disjoint, widths capped
};

WidthResult sli_width(const StepContext& ctx);

// Composite Simpson integration on an irregular sorted grid.
double integrate_sorted(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rif
