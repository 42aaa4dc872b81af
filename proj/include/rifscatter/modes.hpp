#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rifscatter/medium.hpp"
#include "rifscatter/polynomial.hpp"

namespace rif {

enum class Side { Left, Right };

inline char side_letter(Side s) { return s == Side::Left ? 'L' : 'R'; }

// Mode families at fixed comoving frequency. The optical branch (between the
// first and second resonance) splits into lower (lo), middle (mo) and upper
// (uo) positive-norm modes plus a negative-norm partner (no). The remaining
// branches keep their branch number with a p/n norm tag. Evanescent waves are
// tagged by their decay direction along increasing zeta.
enum class LabelKind {
  lo,
  mo,
  uo,
  no,
  b1,
  b3,
  b4,
  ev_decay,
  ev_grow,
};

struct ModeLabel {
  LabelKind kind = LabelKind::lo;
  int norm_sign = 0;  // +1 / -1 for propagating modes, 0 for evanescent
  Side side = Side::Right;

  // Short form used in tables and maps: "loL", "moR", "b1pL", "evdR", ...
  std::string text() const;

  bool operator==(const ModeLabel& o) const {
    return kind == o.kind && norm_sign == o.norm_sign && side == o.side;
  }
};

// One root of the dispersion polynomial at fixed comoving frequency.
struct ModeRoot {
  LabWave lab;            // internal units
  ComovingWave comoving;  // internal units
  Side side = Side::Right;
  bool propagating = false;
  bool marginal = false;  // classification within the ambiguity band
  int norm_sign = 0;      // sign of the lab frequency, 0 for evanescent
  int branch = 0;         // 1..4 for propagating roots, 0 for evanescent
  double v_g_lab = 0.0;       // signed, fraction of c; meaningless for evanescent
  double v_g_comoving = 0.0;  // signed, fraction of c; meaningless for evanescent
  double residual = 0.0;      // relative dispersion defect of the root
  ModeLabel label;
};

// Comoving-frequency window on the optical branch where the front outruns the
// light (group velocity below u at both edges is the defining property of the
// enclosed fold). Also records the lab frequencies of the two edges where
// v_g = u on the optical branch.
struct SubluminalInterval {
  double omega_min = 0.0;      // comoving, internal units
  double omega_max = 0.0;
  double lab_omega_low = 0.0;  // lab edge mapping to omega_min
  double lab_omega_high = 0.0; // lab edge mapping to omega_max
  Side side = Side::Right;
};

// Horizon character of a comoving frequency relative to the two subluminal
// intervals, numbered in order of increasing frequency for the generic
// ordering minL < minR < maxL < maxR.
enum class HorizonConfiguration {
  NoHorizonLow = 1,      // below both intervals
  WhiteHole = 2,         // inside left only
  HorizonlessOverlap = 3,  // inside both
  BlackHole = 4,         // inside right only
  NoHorizonHigh = 5,     // above both intervals
};

struct ConfigurationResult {
  HorizonConfiguration config = HorizonConfiguration::NoHorizonLow;
  bool degenerate = false;  // within the edge exclusion zone
};

struct SolveOptions {
  double guard_band = 1e-3;     // resonance exclusion for index evaluations
  double eps_prop = 1e-8;       // relative Im threshold separating propagating roots
  double eps_marginal = 1e-5;   // relative Im threshold for the marginal flag
  double root_residual = 1e-9;  // acceptance threshold for polished roots
};

// Propagating frequency window (internal units) of one branch of the
// dispersion relation: branch 1 is (0, omega_r1), branches 2..4 start at the
// n^2 = 0 zero above the previous resonance.
struct BranchWindow {
  double lo = 0.0;
  double hi = 0.0;  // +inf for branch 4
};

BranchWindow branch_window(const SellmeierMedium& m, int branch);

// Degree-8 polynomial in the lab frequency whose roots are the plane waves
// with comoving frequency omega_prime. Requires u > 0.
Poly dispersion_polynomial(const SellmeierMedium& m, double omega_prime, const FrontFrame& f);

// Subluminal interval of the optical branch, or nullopt when the front is
// slower than every optical group velocity or faster than all of them.
std::optional<SubluminalInterval> find_sli(const SellmeierMedium& m, const FrontFrame& f,
                                           Side side);

// Smallest comoving frequency at which the uppermost branch starts to
// contribute propagating roots. Mode counting is only guaranteed below it.
double omega_prime_scope_max(const SellmeierMedium& m, const FrontFrame& f);

// All eight roots at the given comoving frequency, classified and labeled.
// `sli` must be the interval of the same medium and side (pass the cached
// value; the convenience overload computes it). Roots are sorted by label
// text. Requires 0 < omega_prime and no uppermost-branch contribution.
std::vector<ModeRoot> solve_modes(const SellmeierMedium& m, double omega_prime,
                                  const FrontFrame& f, Side side,
                                  const std::optional<SubluminalInterval>& sli,
                                  const SolveOptions& opt = {});
std::vector<ModeRoot> solve_modes(const SellmeierMedium& m, double omega_prime,
                                  const FrontFrame& f, Side side,
                                  const SolveOptions& opt = {});

// Assigns labels in place. Exposed separately for testing; solve_modes calls
// it on its own result.
void label_roots(std::vector<ModeRoot>& roots, double omega_prime,
                 const std::optional<SubluminalInterval>& sli, Side side);

// Classifies a comoving frequency against the two subluminal intervals. The
// right interval must exist. Frequencies within eps_edge_rel (relative to the
// right interval maximum) of any edge are flagged degenerate.
ConfigurationResult configuration(double omega_prime,
                                  const std::optional<SubluminalInterval>& left,
                                  const std::optional<SubluminalInterval>& right,
                                  double eps_edge_rel = 1e-9);

}  // namespace rif
