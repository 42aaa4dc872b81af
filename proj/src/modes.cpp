#include "rifscatter/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rif {

std::string ModeLabel::text() const {
  std::string s;
  switch (kind) {
    case LabelKind::lo: s = "lo"; break;
    case LabelKind::mo: s = "mo"; break;
    case LabelKind::uo: s = "uo"; break;
    case LabelKind::no: s = "no"; break;
    case LabelKind::b1: s = norm_sign >= 0 ? "b1p" : "b1n"; break;
    case LabelKind::b3: s = norm_sign >= 0 ? "b3p" : "b3n"; break;
    case LabelKind::b4: s = norm_sign >= 0 ? "b4p" : "b4n"; break;
    case LabelKind::ev_decay: s = "evd"; break;
    case LabelKind::ev_grow: s = "evg"; break;
  }
  s += side_letter(side);
  return s;
}

namespace {

void require_dispersive(const SellmeierMedium& m) {
  for (double k : m.elastic_constants) {
    if (!(k > 0.0)) {
      throw ValidationError("mode analysis requires three dispersive resonances");
    }
  }
}

// Group index without resonance guards, for frequencies already known to be
// on a propagating branch.
double group_index_raw(const SellmeierMedium& m, double a) {
  const double n = std::sqrt(n_squared(m, a));
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    const double d = o2 - a * a;
    s += m.b[i] * o2 / (d * d);
  }
  return n + a * a * s / n;
}

template <class F>
double bisect(double lo, double hi, F&& fn) {
  double flo = fn(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      break;
    }
    const double fmid = fn(mid);
    if (fmid == 0.0) {
      return mid;
    }
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BranchWindow branch_window(const SellmeierMedium& m, int branch) {
  require_dispersive(m);
  if (branch < 1 || branch > 4) {
    throw ValidationError("branch index must be between 1 and 4");
  }
  if (branch == 1) {
    return {0.0, m.omega_r[0]};
  }
  const double below = m.omega_r[branch - 2];
  const double above =
      branch == 4 ? std::numeric_limits<double>::infinity() : m.omega_r[branch - 1];
  const double lo = below * (1.0 + 1e-13);
  double hi = branch == 4 ? 2.0 * below : above * (1.0 - 1e-13);
  if (branch == 4) {
    while (n_squared(m, hi) <= 0.0) {
      hi *= 2.0;
    }
  }
  const double zero = bisect(lo, hi, [&](double w) { return n_squared(m, w); });
  return {zero, above};
}

std::optional<SubluminalInterval> find_sli(const SellmeierMedium& m, const FrontFrame& f,
                                           Side side) {
  require_dispersive(m);
  if (!(f.u > 0.0)) {
    return std::nullopt;
  }
  const BranchWindow w = branch_window(m, 2);
  const double target = 1.0 / f.u;
  auto h = [&](double x) { return group_index_raw(m, x) - target; };

  const int nsamp = 4001;
  const double la = std::log(w.lo * (1.0 + 1e-9));
  const double lb = std::log(w.hi * (1.0 - 1e-9));
  std::vector<double> xs(nsamp), hs(nsamp);
  for (int i = 0; i < nsamp; ++i) {
    xs[i] = std::exp(la + (lb - la) * i / (nsamp - 1.0));
    hs[i] = h(xs[i]);
  }
  std::vector<double> crossings;
  for (int i = 0; i + 1 < nsamp; ++i) {
    if (hs[i] * hs[i + 1] < 0.0) {
      crossings.push_back(bisect(xs[i], xs[i + 1], h));
    }
  }
  if (crossings.empty()) {
    return std::nullopt;
  }
  if (crossings.size() % 2 != 0) {
    throw RootCountError("odd number of group-velocity crossings on the optical branch");
  }
  const double x1 = crossings.front();
  const double x2 = crossings.back();
  auto wp = [&](double x) {
    return f.gamma * x * (1.0 - f.u * std::sqrt(n_squared(m, x)));
  };
  SubluminalInterval s;
  s.omega_min = wp(x1);
  s.omega_max = wp(x2);
  s.lab_omega_low = x1;
  s.lab_omega_high = x2;
  s.side = side;
  if (!(s.omega_min > 0.0 && s.omega_max > s.omega_min)) {
    throw RootCountError("subluminal interval edges out of order");
  }
  return s;
}

double omega_prime_scope_max(const SellmeierMedium& m, const FrontFrame& f) {
  require_dispersive(m);
  if (!(f.u > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  const BranchWindow w = branch_window(m, 4);
  double best = f.gamma * w.lo;  // backward-wave pattern is cheapest at the band edge
  const double la = std::log(w.lo * (1.0 + 1e-9));
  const double lb = std::log(w.lo * 1e3);
  const int nsamp = 3000;
  for (int i = 0; i < nsamp; ++i) {
    const double x = std::exp(la + (lb - la) * i / (nsamp - 1.0));
    const double n = std::sqrt(n_squared(m, x));
    const double v = f.gamma * x * (1.0 - f.u * n);
    if (v > 0.0 && v < best) {
      best = v;
    }
  }
  return best * (1.0 - 1e-3);
}

Poly dispersion_polynomial(const SellmeierMedium& m, double omega_prime,
                           const FrontFrame& f) {
  if (!(f.u > 0.0)) {
    throw ValidationError("dispersion polynomial requires a moving front");
  }
  const double a = omega_prime / f.gamma;
  Poly pi_all{{1.0}};
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    pi_all = poly_mul(pi_all, Poly{{o2, 0.0, -1.0}});
  }
  const double iu2 = 1.0 / (f.u * f.u);
  Poly p = poly_mul(Poly{{a * a * iu2, -2.0 * a * iu2, iu2}}, pi_all);
  p = poly_add(p, poly_scaled(poly_mul(Poly{{0.0, 0.0, 1.0}}, pi_all), -1.0));
  for (int i = 0; i < 3; ++i) {
    Poly pi_other{{1.0}};
    for (int j = 0; j < 3; ++j) {
      if (j != i) {
        const double o2 = m.omega_r[j] * m.omega_r[j];
        pi_other = poly_mul(pi_other, Poly{{o2, 0.0, -1.0}});
      }
    }
    const double o2 = m.omega_r[i] * m.omega_r[i];
    p = poly_add(p, poly_scaled(poly_mul(Poly{{0.0, 0.0, 1.0}}, pi_other), -m.b[i] * o2));
  }
  return p;
}

void label_roots(std::vector<ModeRoot>& roots, double omega_prime,
                 const std::optional<SubluminalInterval>& sli, Side side) {
  std::vector<ModeRoot*> optical_pos;
  for (auto& r : roots) {
    r.side = side;
    r.label.side = side;
    r.label.norm_sign = r.norm_sign;
    if (!r.propagating) {
      r.label.kind = r.comoving.k.imag() > 0.0 ? LabelKind::ev_decay : LabelKind::ev_grow;
      continue;
    }
    switch (r.branch) {
      case 1: r.label.kind = LabelKind::b1; break;
      case 3: r.label.kind = LabelKind::b3; break;
      case 4: r.label.kind = LabelKind::b4; break;
      case 2:
        if (r.norm_sign < 0) {
          r.label.kind = LabelKind::no;
        } else {
          optical_pos.push_back(&r);
        }
        break;
      default:
        throw RootCountError("unclassified propagating root");
    }
  }

  if (optical_pos.size() == 3) {
    std::sort(optical_pos.begin(), optical_pos.end(), [](const ModeRoot* a, const ModeRoot* b) {
      return a->comoving.k.real() < b->comoving.k.real();
    });
    optical_pos[0]->label.kind = LabelKind::lo;
    optical_pos[1]->label.kind = LabelKind::mo;
    optical_pos[2]->label.kind = LabelKind::uo;
    if (!(optical_pos[1]->v_g_comoving > 0.0) || optical_pos[0]->v_g_comoving > 0.0 ||
        optical_pos[2]->v_g_comoving > 0.0) {
      throw RootCountError("middle-optical root is not the unique forward mover");
    }
  } else if (optical_pos.size() == 1) {
    if (sli && omega_prime > sli->omega_min && omega_prime < sli->omega_max) {
      throw RootCountError("single optical root inside the subluminal interval");
    }
    const bool below = sli && omega_prime <= sli->omega_min;
    optical_pos[0]->label.kind = below ? LabelKind::uo : LabelKind::lo;
  } else {
    std::ostringstream msg;
    msg << "expected 1 or 3 positive optical roots, found " << optical_pos.size();
    throw RootCountError(msg.str());
  }
}

namespace {

std::vector<ModeRoot> solve_modes_impl(const SellmeierMedium& m, double omega_prime,
                                       const FrontFrame& f, Side side,
                                       const std::optional<SubluminalInterval>& sli,
                                       const SolveOptions& opt) {
  require_dispersive(m);
  if (!(omega_prime > 0.0) || !std::isfinite(omega_prime)) {
    throw ValidationError("comoving frequency must be positive and finite");
  }
  if (!(f.u > 0.0)) {
    throw ValidationError("mode solve requires a moving front");
  }

  const Poly p = dispersion_polynomial(m, omega_prime, f);
  std::vector<cdouble> zs = poly_roots(p, opt.root_residual);
  if (zs.size() != 8) {
    throw RootCountError("dispersion polynomial did not yield eight roots");
  }

  // Split into propagating (snapped real) and evanescent candidates.
  std::vector<cdouble> prop;
  std::vector<cdouble> evan;
  std::vector<bool> evan_marginal;
  for (const cdouble& z : zs) {
    const double rel = std::abs(z.imag()) / std::abs(z);
    if (rel <= opt.eps_prop) {
      prop.push_back(cdouble(z.real(), 0.0));
    } else {
      evan.push_back(z);
      evan_marginal.push_back(rel < opt.eps_marginal);
    }
  }
  if (evan.size() != 0 && evan.size() != 2) {
    std::ostringstream msg;
    msg << "expected 0 or 2 evanescent roots, found " << evan.size();
    throw RootCountError(msg.str());
  }
  if (evan.size() == 2) {
    const cdouble z1 = evan[0];
    const cdouble z2 = evan[1];
    if (std::abs(z1 - std::conj(z2)) > 1e-6 * std::abs(z1)) {
      throw RootCountError("evanescent roots do not form a conjugate pair");
    }
    const cdouble zm = 0.5 * (z1 + std::conj(z2));
    evan[0] = zm;
    evan[1] = std::conj(zm);
  }

  std::vector<ModeRoot> roots;
  roots.reserve(8);
  auto push_root = [&](cdouble z, bool propagating, bool marginal) {
    ModeRoot r;
    r.side = side;
    r.propagating = propagating;
    r.marginal = marginal;
    r.lab.omega = z;
    r.lab.k = (z - omega_prime / f.gamma) / f.u;
    r.comoving.omega = omega_prime;
    r.comoving.k = (z / f.gamma - omega_prime) / f.u;
    r.residual = std::abs(dispersion_residual_w(m, r.lab.omega, r.lab.k));
    if (propagating) {
      const double w = z.real();
      const double aw = std::abs(w);
      if (aw >= m.omega_r[2]) {
        throw ValidationError("comoving frequency reaches the uppermost branch");
      }
      r.branch = aw < m.omega_r[0] ? 1 : (aw < m.omega_r[1] ? 2 : 3);
      const double n2 = n_squared(m, aw);
      if (!(n2 > 0.0)) {
        throw RootCountError("real root off the propagating bands");
      }
      const double n = std::sqrt(n2);
      const double ng = group_index_raw(m, aw);
      const double v = r.lab.k.real() / (w * n * ng);
      r.v_g_lab = v;
      r.v_g_comoving = (v - f.u) / (1.0 - f.u * v);
      r.norm_sign = w > 0.0 ? 1 : -1;
    }
    roots.push_back(r);
  };
  for (const cdouble& z : prop) {
    push_root(z, true, false);
  }
  for (std::size_t i = 0; i < evan.size(); ++i) {
    push_root(evan[i], false, evan_marginal[i]);
  }

  // Census: one root per norm sign on branches 1 and 3, one negative optical,
  // one or three positive optical.
  int b1p = 0, b1n = 0, b3p = 0, b3n = 0, opt_pos = 0, opt_neg = 0;
  for (const auto& r : roots) {
    if (!r.propagating) {
      continue;
    }
    if (r.branch == 1) {
      (r.norm_sign > 0 ? b1p : b1n)++;
    } else if (r.branch == 3) {
      (r.norm_sign > 0 ? b3p : b3n)++;
    } else if (r.branch == 2) {
      (r.norm_sign > 0 ? opt_pos : opt_neg)++;
    }
  }
  if (b1p != 1 || b1n != 1 || b3p != 1 || b3n != 1 || opt_neg != 1 ||
      (opt_pos != 1 && opt_pos != 3)) {
    std::ostringstream msg;
    msg << "root census violation at omega' = " << omega_prime << ": b1 " << b1p << "/"
        << b1n << ", b3 " << b3p << "/" << b3n << ", optical " << opt_pos << "/" << opt_neg
        << ", evanescent " << evan.size();
    throw RootCountError(msg.str());
  }

  label_roots(roots, omega_prime, sli, side);
  std::sort(roots.begin(), roots.end(), [](const ModeRoot& a, const ModeRoot& b) {
    return a.label.text() < b.label.text();
  });
  return roots;
}

}  // namespace

std::vector<ModeRoot> solve_modes(const SellmeierMedium& m, double omega_prime,
                                  const FrontFrame& f, Side side,
                                  const std::optional<SubluminalInterval>& sli,
                                  const SolveOptions& opt) {
  return solve_modes_impl(m, omega_prime, f, side, sli, opt);
}

std::vector<ModeRoot> solve_modes(const SellmeierMedium& m, double omega_prime,
                                  const FrontFrame& f, Side side, const SolveOptions& opt) {
  return solve_modes_impl(m, omega_prime, f, side, find_sli(m, f, side), opt);
}

ConfigurationResult configuration(double omega_prime,
                                  const std::optional<SubluminalInterval>& left,
                                  const std::optional<SubluminalInterval>& right,
                                  double eps_edge_rel) {
  if (!right) {
    throw ValidationError("configuration requires a right-side subluminal interval");
  }
  ConfigurationResult result;
  const double eps = eps_edge_rel * right->omega_max;
  auto near_edge = [&](const SubluminalInterval& s) {
    return std::abs(omega_prime - s.omega_min) < eps ||
           std::abs(omega_prime - s.omega_max) < eps;
  };
  result.degenerate = near_edge(*right) || (left && near_edge(*left));

  const bool in_left =
      left && omega_prime > left->omega_min && omega_prime < left->omega_max;
  const bool in_right = omega_prime > right->omega_min && omega_prime < right->omega_max;
  if (in_left && in_right) {
    result.config = HorizonConfiguration::HorizonlessOverlap;
  } else if (in_left) {
    result.config = HorizonConfiguration::WhiteHole;
  } else if (in_right) {
    result.config = HorizonConfiguration::BlackHole;
  } else if (omega_prime >= right->omega_max) {
    result.config = HorizonConfiguration::NoHorizonHigh;
  } else {
    result.config = HorizonConfiguration::NoHorizonLow;
  }
  return result;
}

}  // namespace rif
