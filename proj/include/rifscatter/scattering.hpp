#pragma once

#include <map>
#include <string>
#include <vector>

#include "rifscatter/fields.hpp"

namespace rif {

enum class GlobalKind { In, Out };

// One local mode on one side of the front, with its role in the matching
// problem. Propagating entries hold the normalized polarization vector.
struct LocalModeEntry {
  PolarizedMode mode;
  bool is_in = false;
  bool is_out = false;
  bool admissible = false;  // evanescent wave decaying away from the front
};

struct SideBasis {
  Side side = Side::Right;
  std::vector<LocalModeEntry> entries;
};

struct ScatterOptions {
  SolveOptions solve;
  double eps_edge_rel = 1e-9;
  double condition_max = 1e12;
  double unitarity_tol = 1e-8;
  double continuity_tol = 1e-9;
};

// Everything fixed for a given step and front: cached subluminal intervals
// and the validity ceiling for comoving frequencies.
struct StepContext {
  IndexStep step;
  FrontFrame frame;
  ScatterOptions options;
  std::optional<SubluminalInterval> sli_left;
  std::optional<SubluminalInterval> sli_right;
  double scope_max = 0.0;  // internal units
};

StepContext make_context(const IndexStep& step, const FrontFrame& frame,
                         const ScatterOptions& options = {});

// A solution of the matching problem: one unit-flux incoming (or outgoing)
// mode plus the scattered field it determines. Coefficients are keyed by
// label text and include the defining mode itself.
struct GlobalMode {
  GlobalKind kind = GlobalKind::In;
  ModeLabel defining;
  std::map<std::string, cdouble> left_coefficients;
  std::map<std::string, cdouble> right_coefficients;
  double continuity_residual = 0.0;
  double condition = 0.0;
};

// Scattering matrix at one comoving frequency: s(i, j) is the coefficient of
// outgoing mode out_labels[j] in the global in-mode defined by in_labels[i].
struct ScatteringMatrix {
  double omega_prime = 0.0;  // internal units
  std::vector<ModeLabel> in_labels;
  std::vector<ModeLabel> out_labels;
  Eigen::MatrixXcd s;
  std::vector<int> metric_in;   // norm signs of the in basis
  std::vector<int> metric_out;  // norm signs of the out basis
  double unitarity_residual = 0.0;
  double continuity_residual = 0.0;
  double condition = 0.0;
  ConfigurationResult config;
};

// Local mode bases on both sides at omega_prime, with in/out role flags.
std::pair<SideBasis, SideBasis> build_bases(const StepContext& ctx, double omega_prime);

ScatteringMatrix s_matrix(const StepContext& ctx, double omega_prime);

GlobalMode global_mode(const StepContext& ctx, double omega_prime, GlobalKind kind,
                       const ModeLabel& defining);

// Spontaneous photon flux density emitted into one outgoing mode: the summed
// squared couplings to incoming modes of opposite norm.
double flux_density(const ScatteringMatrix& sm, const std::string& out_label);

// Flux densities of every outgoing mode, keyed by label text.
std::map<std::string, double> mode_fluxes(const ScatteringMatrix& sm);

}  // namespace rif
