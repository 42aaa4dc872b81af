#include "rifscatter/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

namespace rif {

namespace {

constexpr double pi = std::numbers::pi;

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&]() {
      int i;
      while ((i = next.fetch_add(1)) < n) {
        fn(i);
      }
    });
  }
  for (auto& w : workers) {
    w.join();
  }
}

double bisect_fn(double lo, double hi, const std::function<double(double)>& fn) {
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

double index_raw(const SellmeierMedium& m, double a) { return std::sqrt(n_squared(m, a)); }

double group_index_unguarded(const SellmeierMedium& m, double a) {
  const double n = index_raw(m, a);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double o2 = m.omega_r[i] * m.omega_r[i];
    const double d = o2 - a * a;
    s += m.b[i] * o2 / (d * d);
  }
  return n + a * a * s / n;
}

}  // namespace

std::vector<std::string> lab_emission_labels() {
  return {"loL", "moR", "uoL", "noL", "b1nL", "b3pL", "b3nL"};
}

std::vector<double> default_omega_prime_grid(const StepContext& ctx, int n_points) {
  if (!ctx.sli_right) {
    throw ValidationError("spectrum grid requires a right-side subluminal interval");
  }
  if (n_points < 16) {
    throw ValidationError("grid needs at least 16 points");
  }
  const double lo = 0.8 * ctx.sli_right->omega_min;
  const double hi = 1.2 * ctx.sli_right->omega_max;

  std::vector<double> edges;
  auto add_edge = [&](double e) {
    if (e > lo && e < hi) {
      edges.push_back(e);
    }
  };
  if (ctx.sli_left) {
    add_edge(ctx.sli_left->omega_min);
    add_edge(ctx.sli_left->omega_max);
  }
  add_edge(ctx.sli_right->omega_min);
  add_edge(ctx.sli_right->omega_max);
  std::sort(edges.begin(), edges.end());

  std::vector<double> breaks{lo};
  breaks.insert(breaks.end(), edges.begin(), edges.end());
  breaks.push_back(hi);

  std::vector<double> grid;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    const int nseg =
        std::max(8, static_cast<int>(std::lround(n_points * (b - a) / (hi - lo))));
    for (int j = 0; j < nseg; ++j) {
      const double t = (j + 0.5) / nseg;
      grid.push_back(a + (b - a) * 0.5 * (1.0 - std::cos(pi * t)));
    }
  }
  for (double e : edges) {
    for (double d : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const double off = d * (hi - lo);
      if (e - off > lo) {
        grid.push_back(e - off);
      }
      if (e + off < hi) {
        grid.push_back(e + off);
      }
    }
  }

  std::sort(grid.begin(), grid.end());
  const double eps_edge = 2.0 * ctx.options.eps_edge_rel * ctx.sli_right->omega_max;
  std::vector<double> out;
  for (double x : grid) {
    if (!out.empty() && x - out.back() < 1e-12 * hi) {
      continue;
    }
    bool near = false;
    for (double e : edges) {
      if (std::abs(x - e) < eps_edge) {
        near = true;
      }
    }
    if (!near && x < ctx.scope_max) {
      out.push_back(x);
    }
  }
  return out;
}

MovingSpectrum moving_frame_spectrum(const StepContext& ctx, const std::vector<double>& grid,
                                     int jobs) {
  MovingSpectrum spec;
  spec.omega_prime = grid;
  spec.columns = {"loL", "moR", "uoL", "noL", "b1pL", "b1nL", "b3pL", "b3nL"};
  const int n = static_cast<int>(grid.size());
  spec.flux.assign(spec.columns.size(), std::vector<double>(n, 0.0));
  spec.config.assign(n, 0);
  spec.unitarity_residual.assign(n, 0.0);
  std::vector<std::string> errors(n);

  parallel_for(n, jobs, [&](int i) {
    try {
      const ScatteringMatrix sm = s_matrix(ctx, grid[i]);
      const auto fluxes = mode_fluxes(sm);
      for (std::size_t c = 0; c < spec.columns.size(); ++c) {
        const auto it = fluxes.find(spec.columns[c]);
        spec.flux[c][i] = it == fluxes.end() ? 0.0 : it->second;
      }
      spec.config[i] = static_cast<int>(sm.config.config);
      spec.unitarity_residual[i] = sm.unitarity_residual;
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  for (int i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      spec.quarantine.push_back({i, grid[i], errors[i]});
    }
  }
  return spec;
}

namespace {

// One lab-frame emission band: lab frequencies a in (a_lo, a_hi) on `branch`
// of the left or right medium, with omega' = gamma * a * (1 - u n) for
// forward patterns and gamma * a * (u n - 1) for negative-norm ones.
struct LabBand {
  std::string label;
  Side side = Side::Left;
  int branch = 2;
  bool negative = false;
  double a_lo = 0.0;
  double a_hi = 0.0;
};

std::vector<LabBand> make_lab_bands(const StepContext& ctx) {
  std::vector<LabBand> bands;
  const SellmeierMedium& ml = ctx.step.left;
  const double inv_u = 1.0 / ctx.frame.u;

  const BranchWindow w2l = branch_window(ml, 2);
  const BranchWindow w1l = branch_window(ml, 1);
  const BranchWindow w3l = branch_window(ml, 3);

  if (ctx.sli_left) {
    bands.push_back({"loL", Side::Left, 2, false, w2l.lo, ctx.sli_left->lab_omega_low});
    bands.push_back({"uoL", Side::Left, 2, false, ctx.sli_left->lab_omega_high, w2l.hi});
  } else {
    bands.push_back({"loL", Side::Left, 2, false, w2l.lo, w2l.hi});
  }
  if (ctx.sli_right) {
    bands.push_back({"moR", Side::Right, 2, false, ctx.sli_right->lab_omega_low,
                     ctx.sli_right->lab_omega_high});
  }

  auto index_crossing = [&](const SellmeierMedium& m, const BranchWindow& w) {
    return bisect_fn(w.lo * (1.0 + 1e-12), w.hi * (1.0 - 1e-12),
                     [&](double a) { return index_raw(m, a) - inv_u; });
  };
  const double neg_edge = index_crossing(ml, w2l);
  bands.push_back({"noL", Side::Left, 2, true, neg_edge, w2l.hi});
  bands.push_back({"b1nL", Side::Left, 1, true, 1e-9, w1l.hi});
  const double b3_cross = index_crossing(ml, w3l);
  bands.push_back({"b3pL", Side::Left, 3, false, w3l.lo, b3_cross});
  bands.push_back({"b3nL", Side::Left, 3, true, b3_cross, w3l.hi});
  return bands;
}

}  // namespace

LabSpectrum lab_spectrum(const StepContext& ctx, const std::vector<double>& wavelengths,
                         int jobs) {
  if (!ctx.sli_right) {
    throw ValidationError("lab spectrum requires a right-side subluminal interval");
  }
  LabSpectrum spec;
  spec.wavelength = wavelengths;
  spec.columns = lab_emission_labels();
  spec.columns.push_back("total");
  const int n = static_cast<int>(wavelengths.size());
  spec.flux.assign(spec.columns.size(), std::vector<double>(n, 0.0));

  const auto bands = make_lab_bands(ctx);
  const double g = ctx.frame.gamma;
  const double u = ctx.frame.u;

  // Band markers in lab frequency. A marker stays zero when its comoving
  // target is not reached inside the band.
  {
    const SellmeierMedium& ml = ctx.step.left;
    const SellmeierMedium& mr = ctx.step.right;
    const double min_r = ctx.sli_right->omega_min;
    auto try_marker = [&](const SellmeierMedium& m, double a_lo, double a_hi,
                          double target) -> double {
      auto fn = [&](double a) { return g * a * (1.0 - u * index_raw(m, a)) - target; };
      if (fn(a_lo) * fn(a_hi) > 0.0) {
        return 0.0;
      }
      return bisect_fn(a_lo, a_hi, fn);
    };
    spec.markers.black_hole_high = ctx.sli_right->lab_omega_high;
    double bh_start = min_r;
    if (ctx.sli_left && ctx.sli_left->omega_max > min_r) {
      bh_start = ctx.sli_left->omega_max;
    }
    spec.markers.black_hole_low =
        try_marker(mr, ctx.sli_right->lab_omega_low * (1.0 + 1e-12),
                   ctx.sli_right->lab_omega_high * (1.0 - 1e-12), bh_start);
    for (const auto& band : bands) {
      if (band.label == "noL") {
        spec.markers.negative_edge = band.a_lo;
      }
      if (band.label == "loL" && ctx.sli_left) {
        const double wh_end = std::min(ctx.sli_left->omega_max, min_r);
        spec.markers.white_hole_high = ctx.sli_left->lab_omega_low;
        spec.markers.white_hole_low =
            try_marker(ml, band.a_lo * (1.0 + 1e-12), band.a_hi * (1.0 - 1e-12), wh_end);
      }
    }
  }

  std::vector<std::vector<std::string>> errors(n);
  parallel_for(n, jobs, [&](int i) {
    const double a_obs = units::wavelength_to_omega(wavelengths[i]);
    for (const auto& band : bands) {
      if (!(a_obs > band.a_lo && a_obs < band.a_hi)) {
        continue;
      }
      try {
        const SellmeierMedium& m = band.side == Side::Left ? ctx.step.left : ctx.step.right;
        const double nn = index_raw(m, a_obs);
        const double ng = group_index_unguarded(m, a_obs);
        const double wp =
            band.negative ? g * a_obs * (u * nn - 1.0) : g * a_obs * (1.0 - u * nn);
        if (!(wp > 0.0 && wp < ctx.scope_max)) {
          continue;
        }
        const double eps_edge = ctx.options.eps_edge_rel * ctx.sli_right->omega_max;
        bool near_edge = false;
        for (const auto& sli : {ctx.sli_left, ctx.sli_right}) {
          if (sli && (std::abs(wp - sli->omega_min) < eps_edge ||
                      std::abs(wp - sli->omega_max) < eps_edge)) {
            near_edge = true;
          }
        }
        if (near_edge) {
          errors[i].push_back(band.label + ": comoving frequency on an interval edge");
          continue;
        }
        const ScatteringMatrix sm = s_matrix(ctx, wp);
        const auto fluxes = mode_fluxes(sm);
        const auto it = fluxes.find(band.label);
        if (it == fluxes.end()) {
          continue;
        }
        const double jac = std::abs(1.0 - u * ng);
        const double value = it->second * jac / (2.0 * pi) * units::ref_wavelength_si /
                             (wavelengths[i] * wavelengths[i]) * units::omega_unit_si;
        for (std::size_t c = 0; c < spec.columns.size(); ++c) {
          if (spec.columns[c] == band.label) {
            spec.flux[c][i] += value;
          }
        }
        spec.flux.back()[i] += value;
      } catch (const Error& e) {
        errors[i].push_back(band.label + ": " + e.what());
      }
    }
  });

  for (int i = 0; i < n; ++i) {
    for (const auto& msg : errors[i]) {
      spec.quarantine.push_back({i, wavelengths[i], msg});
    }
  }
  return spec;
}

std::vector<double> wavelength_grid(double lambda_min, double lambda_max, int n_points) {
  if (!(lambda_min > 0.0 && lambda_max > lambda_min) || n_points < 2) {
    throw ValidationError("invalid wavelength grid");
  }
  std::vector<double> grid(n_points);
  const double la = std::log(lambda_min);
  const double lb = std::log(lambda_max);
  for (int i = 0; i < n_points; ++i) {
    grid[i] = std::exp(la + (lb - la) * i / (n_points - 1.0));
  }
  return grid;
}

double integrate_sorted(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) {
    throw ValidationError("integration needs matching arrays of at least two points");
  }
  double total = 0.0;
  std::size_t i = 0;
  while (i + 2 < n || (i + 2 == n && (n - 1) % 2 == 0)) {
    if (i + 2 >= n) {
      break;
    }
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    total += (h0 + h1) / 6.0 *
             ((2.0 - h1 / h0) * y[i] +
              (h0 + h1) * (h0 + h1) / (h0 * h1) * y[i + 1] +
              (2.0 - h0 / h1) * y[i + 2]);
    i += 2;
  }
  if (i + 2 == n) {
    total += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  }
  return total;
}

PhotonNumberResult photon_number(const StepContext& ctx, double length_si, int n_core,
                                 int jobs) {
  if (!ctx.sli_right) {
    throw ValidationError("photon number requires a right-side subluminal interval");
  }
  if (!(length_si > 0.0)) {
    throw ValidationError("propagation length must be positive");
  }
  const double a = ctx.sli_right->omega_min;
  const double b = ctx.sli_right->omega_max;
  const double w = b - a;

  std::vector<double> grid;
  for (int j = 0; j < n_core; ++j) {
    grid.push_back(a + w * (j + 0.5) / n_core);
  }
  for (int k = 2; k <= 28; ++k) {
    const double d = w * std::pow(0.5, k);
    grid.push_back(a + d);
    grid.push_back(b - d);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [&](double p, double q) { return q - p < 1e-13 * b; }),
             grid.end());

  const int n = static_cast<int>(grid.size());
  std::vector<double> flux(n, 0.0);
  std::vector<char> ok(n, 0);
  parallel_for(n, jobs, [&](int i) {
    try {
      const ScatteringMatrix sm = s_matrix(ctx, grid[i]);
      flux[i] = flux_density(sm, "moR");
      ok[i] = 1;
    } catch (const Error&) {
      ok[i] = 0;
    }
  });

  std::vector<double> xs, ys;
  for (int i = 0; i < n; ++i) {
    if (ok[i]) {
      xs.push_back(grid[i]);
      ys.push_back(flux[i]);
    }
  }
  if (xs.size() < 8) {
    throw MatchingError("too few usable points inside the subluminal interval");
  }

  PhotonNumberResult result;
  result.flux_integral = integrate_sorted(xs, ys);
  result.delta_tau_si = length_si / (ctx.frame.u * units::c_si * ctx.frame.gamma);
  result.photons =
      units::time_to_internal(result.delta_tau_si) * result.flux_integral / (2.0 * pi);
  result.grid_points = static_cast<int>(xs.size());
  return result;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("power-law fit needs at least two matching samples");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw ValidationError("power-law fit requires positive data");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw ValidationError("power-law fit requires spread in x");
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.n = static_cast<int>(lx.size());
  return fit;
}

WidthResult sli_width(const StepContext& ctx) {
  if (!ctx.sli_right) {
    throw ValidationError("width diagnostics require a right-side subluminal interval");
  }
  WidthResult r;
  r.min_right = ctx.sli_right->omega_min;
  r.max_right = ctx.sli_right->omega_max;
  if (ctx.sli_left) {
    r.min_left = ctx.sli_left->omega_min;
    r.max_left = ctx.sli_left->omega_max;
    r.saturated = r.max_left <= r.min_right;
    r.black_hole_width = std::max(0.0, r.max_right - std::max(r.max_left, r.min_right));
    r.white_hole_width = std::max(0.0, std::min(r.max_left, r.min_right) - r.min_left);
  } else {
    r.saturated = true;
    r.black_hole_width = r.max_right - r.min_right;
    r.white_hole_width = 0.0;
  }
  return r;
}

}  // namespace rif
