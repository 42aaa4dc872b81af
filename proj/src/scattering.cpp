#include "rifscatter/scattering.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace rif {

namespace {

using Matrix8cd = Eigen::Matrix<cdouble, 8, 8>;

// Continuity conditions at the front: the four fields and their zeta
// derivatives. Momentum continuity follows from these because the momentum
// coefficients are side-independent.
Vector8cd matching_vector(const LocalModeEntry& e) {
  Vector8cd mv;
  const cdouble ik = cdouble(0.0, 1.0) * e.mode.root.comoving.k;
  for (int j = 0; j < 4; ++j) {
    mv[j] = e.mode.v[j];
    mv[4 + j] = ik * e.mode.v[j];
  }
  return mv;
}

double side_sign(Side s) { return s == Side::Left ? 1.0 : -1.0; }

struct Assembly {
  Matrix8cd a = Matrix8cd::Zero();
  std::vector<const LocalModeEntry*> unknowns;
  double scale = 0.0;
};

Assembly assemble(const SideBasis& left, const SideBasis& right, bool unknowns_outgoing) {
  Assembly as;
  auto add_side = [&](const SideBasis& basis) {
    for (const auto& e : basis.entries) {
      const bool prop_unknown = unknowns_outgoing ? e.is_out : e.is_in;
      if (prop_unknown || e.admissible) {
        as.unknowns.push_back(&e);
      }
    }
  };
  add_side(left);
  add_side(right);
  if (as.unknowns.size() != 8) {
    std::ostringstream msg;
    msg << "matching system has " << as.unknowns.size() << " unknowns, expected 8";
    throw RootCountError(msg.str());
  }
  std::sort(as.unknowns.begin(), as.unknowns.end(),
            [](const LocalModeEntry* a, const LocalModeEntry* b) {
              return a->mode.root.label.text() < b->mode.root.label.text();
            });
  for (int j = 0; j < 8; ++j) {
    const Vector8cd col =
        side_sign(as.unknowns[j]->mode.root.side) * matching_vector(*as.unknowns[j]);
    as.a.col(j) = col;
    as.scale = std::max(as.scale, col.cwiseAbs().maxCoeff());
  }
  return as;
}

std::vector<const LocalModeEntry*> collect(const SideBasis& left, const SideBasis& right,
                                           bool incoming) {
  std::vector<const LocalModeEntry*> list;
  for (const SideBasis* basis : {&left, &right}) {
    for (const auto& e : basis->entries) {
      if (incoming ? e.is_in : e.is_out) {
        list.push_back(&e);
      }
    }
  }
  std::sort(list.begin(), list.end(), [](const LocalModeEntry* a, const LocalModeEntry* b) {
    return a->mode.root.label.text() < b->mode.root.label.text();
  });
  return list;
}

}  // namespace

StepContext make_context(const IndexStep& step, const FrontFrame& frame,
                         const ScatterOptions& options) {
  StepContext ctx{step, frame, options,
                  find_sli(step.left, frame, Side::Left),
                  find_sli(step.right, frame, Side::Right),
                  std::min(omega_prime_scope_max(step.left, frame),
                           omega_prime_scope_max(step.right, frame))};
  return ctx;
}

std::pair<SideBasis, SideBasis> build_bases(const StepContext& ctx, double omega_prime) {
  if (!(omega_prime > 0.0) || !(omega_prime < ctx.scope_max)) {
    std::ostringstream msg;
    msg << "comoving frequency " << omega_prime << " outside the valid range (0, "
        << ctx.scope_max << ")";
    throw ValidationError(msg.str());
  }
  auto build = [&](const SellmeierMedium& m, Side side,
                   const std::optional<SubluminalInterval>& sli) {
    SideBasis basis;
    basis.side = side;
    auto roots = solve_modes(m, omega_prime, ctx.frame, side, sli, ctx.options.solve);
    for (const auto& r : roots) {
      LocalModeEntry e;
      PolarizedMode pm = polarization_vector(m, r, ctx.frame);
      if (r.propagating) {
        e.mode = normalize(pm);
        const double v = r.v_g_comoving;
        if (side == Side::Left) {
          e.is_in = v > 0.0;
          e.is_out = v < 0.0;
        } else {
          e.is_in = v < 0.0;
          e.is_out = v > 0.0;
        }
      } else {
        e.mode = pm;
        const double im = r.comoving.k.imag();
        e.admissible = side == Side::Left ? im < 0.0 : im > 0.0;
      }
      basis.entries.push_back(std::move(e));
    }
    return basis;
  };
  return {build(ctx.step.left, Side::Left, ctx.sli_left),
          build(ctx.step.right, Side::Right, ctx.sli_right)};
}

ScatteringMatrix s_matrix(const StepContext& ctx, double omega_prime) {
  const auto [left, right] = build_bases(ctx, omega_prime);
  const auto ins = collect(left, right, true);
  const auto outs = collect(left, right, false);
  const int n = static_cast<int>(ins.size());
  if (n == 0 || ins.size() != outs.size()) {
    std::ostringstream msg;
    msg << "asymmetric mode counts: " << ins.size() << " in, " << outs.size() << " out";
    throw RootCountError(msg.str());
  }

  Assembly as = assemble(left, right, true);
  const Eigen::FullPivLU<Matrix8cd> lu(as.a);
  const Eigen::JacobiSVD<Matrix8cd> svd(as.a);
  const double smin = svd.singularValues()(7);
  const double smax = svd.singularValues()(0);
  if (!(smin > 0.0) || smax / smin > ctx.options.condition_max) {
    std::ostringstream msg;
    msg << "matching system condition " << (smin > 0.0 ? smax / smin : INFINITY)
        << " exceeds limit at omega' = " << omega_prime;
    throw MatchingError(msg.str());
  }

  Eigen::Matrix<cdouble, 8, Eigen::Dynamic> rhs(8, n);
  for (int i = 0; i < n; ++i) {
    rhs.col(i) = -side_sign(ins[i]->mode.root.side) * matching_vector(*ins[i]);
  }
  const Eigen::Matrix<cdouble, 8, Eigen::Dynamic> sol = lu.solve(rhs);
  const double resid = (as.a * sol - rhs).cwiseAbs().maxCoeff() / as.scale;
  if (!(resid <= ctx.options.continuity_tol)) {
    std::ostringstream msg;
    msg << "continuity residual " << resid << " at omega' = " << omega_prime;
    throw MatchingError(msg.str());
  }

  ScatteringMatrix sm;
  sm.omega_prime = omega_prime;
  sm.s.resize(n, n);
  sm.condition = smax / smin;
  sm.continuity_residual = resid;
  for (int i = 0; i < n; ++i) {
    sm.in_labels.push_back(ins[i]->mode.root.label);
    sm.metric_in.push_back(ins[i]->mode.root.norm_sign);
    sm.out_labels.push_back(outs[i]->mode.root.label);
    sm.metric_out.push_back(outs[i]->mode.root.norm_sign);
  }
  for (int j = 0; j < n; ++j) {
    int col = -1;
    for (int u = 0; u < 8; ++u) {
      if (as.unknowns[u] == outs[j]) {
        col = u;
        break;
      }
    }
    if (col < 0) {
      throw RootCountError("outgoing mode missing from the unknown set");
    }
    for (int i = 0; i < n; ++i) {
      sm.s(i, j) = sol(col, i);
    }
  }

  Eigen::MatrixXcd hi = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd ho = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    hi(i, i) = sm.metric_in[i];
    ho(i, i) = sm.metric_out[i];
  }
  const double r1 = (sm.s * ho * sm.s.adjoint() - hi).cwiseAbs().maxCoeff();
  const double r2 = (sm.s.adjoint() * hi * sm.s - ho).cwiseAbs().maxCoeff();
  sm.unitarity_residual = std::max(r1, r2);
  if (!(sm.unitarity_residual <= ctx.options.unitarity_tol)) {
    std::ostringstream msg;
    msg << "pseudo-unitarity residual " << sm.unitarity_residual << " at omega' = "
        << omega_prime;
    throw UnitarityError(msg.str());
  }

  sm.config = configuration(omega_prime, ctx.sli_left, ctx.sli_right,
                            ctx.options.eps_edge_rel);
  return sm;
}

GlobalMode global_mode(const StepContext& ctx, double omega_prime, GlobalKind kind,
                       const ModeLabel& defining) {
  const auto [left, right] = build_bases(ctx, omega_prime);
  const bool unknowns_outgoing = kind == GlobalKind::In;

  const LocalModeEntry* def = nullptr;
  for (const SideBasis* basis : {&left, &right}) {
    for (const auto& e : basis->entries) {
      if (e.mode.root.label == defining) {
        def = &e;
      }
    }
  }
  if (def == nullptr) {
    throw ValidationError("defining label " + defining.text() + " not present");
  }
  const bool role_ok = kind == GlobalKind::In ? def->is_in : def->is_out;
  if (!role_ok) {
    throw ValidationError("defining mode " + defining.text() + " has the wrong direction");
  }

  Assembly as = assemble(left, right, unknowns_outgoing);
  const Eigen::FullPivLU<Matrix8cd> lu(as.a);
  const Eigen::JacobiSVD<Matrix8cd> svd(as.a);
  const double smin = svd.singularValues()(7);
  const double smax = svd.singularValues()(0);
  if (!(smin > 0.0) || smax / smin > ctx.options.condition_max) {
    throw MatchingError("matching system too ill-conditioned");
  }

  const Vector8cd rhs = -side_sign(def->mode.root.side) * matching_vector(*def);
  const Vector8cd sol = lu.solve(rhs);
  const double resid = (as.a * sol - rhs).cwiseAbs().maxCoeff() / as.scale;
  if (!(resid <= ctx.options.continuity_tol)) {
    throw MatchingError("continuity residual too large");
  }

  GlobalMode gm;
  gm.kind = kind;
  gm.defining = defining;
  gm.condition = smax / smin;
  gm.continuity_residual = resid;
  auto fill = [&](const SideBasis& basis, std::map<std::string, cdouble>& coeffs) {
    for (const auto& e : basis.entries) {
      cdouble c = 0.0;
      if (&e == def) {
        c = 1.0;
      }
      for (int u = 0; u < 8; ++u) {
        if (as.unknowns[u] == &e) {
          c = sol(u);
        }
      }
      coeffs[e.mode.root.label.text()] = c;
    }
  };
  fill(left, gm.left_coefficients);
  fill(right, gm.right_coefficients);
  return gm;
}

double flux_density(const ScatteringMatrix& sm, const std::string& out_label) {
  int col = -1;
  for (std::size_t j = 0; j < sm.out_labels.size(); ++j) {
    if (sm.out_labels[j].text() == out_label) {
      col = static_cast<int>(j);
    }
  }
  if (col < 0) {
    throw ValidationError("unknown outgoing label " + out_label);
  }
  double flux = 0.0;
  for (std::size_t i = 0; i < sm.in_labels.size(); ++i) {
    if (sm.metric_in[i] != sm.metric_out[col]) {
      flux += std::norm(sm.s(static_cast<int>(i), col));
    }
  }
  return flux;
}

std::map<std::string, double> mode_fluxes(const ScatteringMatrix& sm) {
  std::map<std::string, double> fluxes;
  for (const auto& label : sm.out_labels) {
    fluxes[label.text()] = flux_density(sm, label.text());
  }
  return fluxes;
}

}  // namespace rif
