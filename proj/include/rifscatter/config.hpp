#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rifscatter/scattering.hpp"

namespace rif {

// Flat key=value run configuration. Defaults reproduce the fused-silica
// front at u = 0.66 c with a 2e-2 index step over 1 mm.
struct RunConfig {
  // medium.*
  std::array<double, 3> resonance_nm{9904.0, 116.0, 68.5};
  std::array<double, 3> kappa{0.07142, 0.03246, 0.05540};
  double n_ref = 0.0;  // 0 selects the static index of the right medium

  // front.* / step.*
  double u = 0.66;
  double delta_n = 0.02;

  // sweep.*
  std::vector<double> sweep_delta_n{0.001, 0.002, 0.004, 0.007, 0.01,
                                    0.02,  0.03,  0.04,  0.052, 0.056};

  // grid.*
  int omega_points = 400;
  int lab_points = 2000;
  double lab_min_nm = 230.0;
  double lab_max_nm = 4000.0;

  // run.*
  double length_mm = 1.0;
  double omega_prime = 0.0;  // rad/s, used by the modes command
  std::string out_dir = "out";
  int jobs = 1;

  // solver.*
  double guard_band = 1e-3;
  double eps_prop = 1e-8;
  double eps_edge = 1e-9;
  double condition_max = 1e12;

  // fit.*
  double fit_low_min = 1e-3;
  double fit_low_max = 0.04;
  double fit_high_min = 0.052;
};

// All recognized keys in canonical order.
const std::vector<std::string>& config_keys();

std::map<std::string, std::string> config_to_map(const RunConfig& cfg);

// Parses one key=value assignment into the config. Unknown keys and
// malformed values throw ValidationError.
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Reads a config file: one key=value per line, '#' comments, blank lines
// ignored.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Applies environment overrides RIFSCATTER_<KEY> with dots mapped to
// underscores, e.g. RIFSCATTER_STEP_DELTA_N.
void apply_environment(RunConfig& cfg);

// Range checks on the assembled configuration.
void validate(const RunConfig& cfg);

// FNV-1a hash of the canonical serialization, for provenance stamping.
// Keys that cannot change the numbers (run.out_dir, run.jobs) are skipped.
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

// Builders for the physics layer.
SellmeierMedium make_medium(const RunConfig& cfg);
FrontFrame make_front(const RunConfig& cfg);
IndexStep make_step(const RunConfig& cfg);
IndexStep make_step(const RunConfig& cfg, double delta_n);
ScatterOptions make_scatter_options(const RunConfig& cfg);
StepContext make_context(const RunConfig& cfg);
StepContext make_context(const RunConfig& cfg, double delta_n);

}  // namespace rif
