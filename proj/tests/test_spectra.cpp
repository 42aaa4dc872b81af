#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "rifscatter/spectra.hpp"
#include "rifscatter/units.hpp"

namespace {

const rif::FrontFrame kFrame(0.66);

rif::StepContext context_for(double delta_n) {
  const auto m = rif::SellmeierMedium::fused_silica();
  return rif::make_context(rif::scale_medium(m, delta_n), kFrame);
}

}  // namespace

TEST_CASE("simpson integration on irregular grids", "[spectra]") {
  std::vector<double> x{0.0, 0.3, 0.5, 1.1, 1.4, 2.0, 2.3};
  std::vector<double> quad, lin;
  for (double xi : x) {
    quad.push_back(2.0 * xi * xi - xi + 0.5);
    lin.push_back(3.0 * xi + 1.0);
  }
  // Odd point count: pure composite Simpson, exact for quadratics.
  const double span = 2.3;
  const double exact = 2.0 * span * span * span / 3.0 - span * span / 2.0 + 0.5 * span;
  CHECK(rif::integrate_sorted(x, quad) == Approx(exact).epsilon(1e-12));

  // Even point count ends with a trapezoid, exact for linear data.
  std::vector<double> xe{0.0, 0.4, 1.0, 1.7};
  std::vector<double> ye;
  for (double xi : xe) {
    ye.push_back(3.0 * xi + 1.0);
  }
  CHECK(rif::integrate_sorted(xe, ye) ==
        Approx(1.5 * 1.7 * 1.7 + 1.7).epsilon(1e-12));

  CHECK_THROWS_AS(rif::integrate_sorted({1.0}, {1.0}), rif::ValidationError);
  CHECK_THROWS_AS(rif::integrate_sorted({1.0, 2.0}, {1.0}), rif::ValidationError);
}

TEST_CASE("power law fitting", "[spectra]") {
  std::vector<double> x, y;
  for (int i = 1; i <= 12; ++i) {
    const double xi = 1e-3 * i * i;
    x.push_back(xi);
    y.push_back(3.7 * std::pow(xi, 2.5));
  }
  const auto fit = rif::fit_power_law(x, y);
  CHECK(fit.exponent == Approx(2.5).epsilon(1e-10));
  CHECK(fit.amplitude == Approx(3.7).epsilon(1e-8));
  CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
  CHECK(fit.n == 12);

  CHECK_THROWS_AS(rif::fit_power_law({1.0, 2.0}, {1.0, -2.0}), rif::ValidationError);
  CHECK_THROWS_AS(rif::fit_power_law({1.0}, {1.0}), rif::ValidationError);
  CHECK_THROWS_AS(rif::fit_power_law({2.0, 2.0}, {1.0, 1.0}), rif::ValidationError);
}

TEST_CASE("interval widths against the step height", "[spectra]") {
  const auto w02 = rif::sli_width(context_for(0.02));
  CHECK(w02.min_left == Approx(0.02391118306577736).epsilon(1e-9));
  CHECK(w02.max_left == Approx(0.0693538605402775).epsilon(1e-9));
  CHECK(w02.min_right == Approx(0.02739326232712924).epsilon(1e-9));
  CHECK(w02.max_right == Approx(0.09903287043332394).epsilon(1e-9));
  CHECK(w02.black_hole_width == Approx(0.029679009893046435).epsilon(1e-8));
  CHECK(w02.white_hole_width ==
        Approx(0.02739326232712924 - 0.02391118306577736).epsilon(1e-8));
  CHECK_FALSE(w02.saturated);

  struct Frozen {
    double delta_n;
    double bh_width;
  };
  for (const auto& f : std::vector<Frozen>{{0.001, 0.001599},
                                           {0.004, 0.006323},
                                           {0.01, 0.015444},
                                           {0.04, 0.054519}}) {
    CHECK(rif::sli_width(context_for(f.delta_n)).black_hole_width ==
          Approx(f.bh_width).epsilon(1e-3));
  }

  CHECK_FALSE(rif::sli_width(context_for(0.056)).saturated);
  const auto w06 = rif::sli_width(context_for(0.06));
  CHECK(w06.saturated);
  CHECK(w06.black_hole_width == Approx(w06.max_right - w06.min_right).epsilon(1e-12));

  const auto w12 = rif::sli_width(context_for(0.12));
  CHECK(w12.saturated);
  CHECK(w12.max_left == 0.0);
  CHECK(w12.white_hole_width == 0.0);
}

TEST_CASE("default grid clusters at the interval edges", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto grid = rif::default_omega_prime_grid(ctx, 128);
  REQUIRE(grid.size() >= 128);
  const double lo = 0.8 * ctx.sli_right->omega_min;
  const double hi = 1.2 * ctx.sli_right->omega_max;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i] > lo * 0.999);
    CHECK(grid[i] < hi);
    if (i > 0) {
      CHECK(grid[i] > grid[i - 1]);
    }
  }
  const std::vector<double> edges{ctx.sli_left->omega_min, ctx.sli_left->omega_max,
                                  ctx.sli_right->omega_min, ctx.sli_right->omega_max};
  const double eps_edge = 2.0 * ctx.options.eps_edge_rel * ctx.sli_right->omega_max;
  for (double e : edges) {
    double nearest = 1e300;
    for (double x : grid) {
      nearest = std::min(nearest, std::abs(x - e));
    }
    CHECK(nearest >= eps_edge);
    CHECK(nearest <= 2e-6 * (hi - lo));
  }
  CHECK_THROWS_AS(rif::default_omega_prime_grid(ctx, 4), rif::ValidationError);
}

TEST_CASE("moving frame spectrum walks the configurations", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto grid = rif::default_omega_prime_grid(ctx, 64);
  const auto spec = rif::moving_frame_spectrum(ctx, grid);
  REQUIRE(spec.omega_prime.size() == grid.size());
  REQUIRE(spec.columns.size() == 8);
  CHECK(spec.quarantine.empty());

  const int n = static_cast<int>(grid.size());
  int mo_col = -1;
  int no_col = -1;
  for (std::size_t c = 0; c < spec.columns.size(); ++c) {
    if (spec.columns[c] == "moR") {
      mo_col = static_cast<int>(c);
    }
    if (spec.columns[c] == "noL") {
      no_col = static_cast<int>(c);
    }
  }
  REQUIRE(mo_col >= 0);
  REQUIRE(no_col >= 0);

  std::set<int> seen;
  for (int i = 0; i < n; ++i) {
    const int cfg = spec.config[i];
    seen.insert(cfg);
    if (i > 0) {
      CHECK(cfg >= spec.config[i - 1]);
    }
    CHECK(spec.unitarity_residual[i] <= 1e-8);
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      CHECK(spec.flux[c][i] >= 0.0);
    }
    // Emission into moR exists exactly where the mode does.
    if (cfg == 3 || cfg == 4) {
      CHECK(spec.flux[mo_col][i] > 0.0);
    } else {
      CHECK(spec.flux[mo_col][i] == 0.0);
    }
    CHECK(spec.flux[no_col][i] > 0.0);
  }
  CHECK(seen == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("out of scope grid points are quarantined", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto spec = rif::moving_frame_spectrum(ctx, {0.05, ctx.scope_max * 1.5});
  REQUIRE(spec.quarantine.size() == 1);
  CHECK(spec.quarantine[0].index == 1);
  CHECK(spec.flux[0][1] == 0.0);
  CHECK(spec.config[1] == 0);
}

TEST_CASE("photon number scales with length and converges", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto r1 = rif::photon_number(ctx, 1e-3, 96);
  CHECK(r1.photons > 0.0);
  CHECK(r1.flux_integral > 0.0);
  CHECK(r1.grid_points >= 96);
  CHECK(r1.delta_tau_si ==
        Approx(1e-3 / (0.66 * rif::units::c_si * kFrame.gamma)).epsilon(1e-12));

  const auto r2 = rif::photon_number(ctx, 2e-3, 96);
  CHECK(r2.photons == Approx(2.0 * r1.photons).epsilon(1e-12));

  const auto fine = rif::photon_number(ctx, 1e-3, 200);
  CHECK(fine.photons == Approx(r1.photons).epsilon(0.02));

  CHECK_THROWS_AS(rif::photon_number(ctx, -1.0, 96), rif::ValidationError);
}

TEST_CASE("lab spectrum bands and markers", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto grid = rif::wavelength_grid(230e-9, 4000e-9, 400);
  CHECK(grid.front() == Approx(230e-9));
  CHECK(grid.back() == Approx(4000e-9));
  const auto spec = rif::lab_spectrum(ctx, grid, 1);
  REQUIRE(spec.columns.back() == "total");
  REQUIRE(spec.flux.size() == spec.columns.size());

  // Markers: the negative-norm edge sits where the left phase index crosses
  // 1/u, the hole intervals are ordered and disjoint in lab frequency.
  const auto& mk = spec.markers;
  CHECK(rif::refractive_index_w(ctx.step.left, mk.negative_edge) ==
        Approx(1.0 / kFrame.u).epsilon(1e-9));
  CHECK(mk.black_hole_low > 0.0);
  CHECK(mk.black_hole_low < mk.black_hole_high);
  CHECK(mk.white_hole_low > 0.0);
  CHECK(mk.white_hole_low < mk.white_hole_high);
  CHECK(mk.white_hole_high < mk.black_hole_low);
  CHECK(mk.black_hole_high == Approx(ctx.sli_right->lab_omega_high));
  CHECK(mk.white_hole_high == Approx(ctx.sli_left->lab_omega_low));

  std::size_t no_col = 0, total_col = spec.columns.size() - 1;
  for (std::size_t c = 0; c < spec.columns.size(); ++c) {
    if (spec.columns[c] == "noL") {
      no_col = c;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = rif::units::wavelength_to_omega(grid[i]);
    double sum = 0.0;
    for (std::size_t c = 0; c < total_col; ++c) {
      CHECK(spec.flux[c][i] >= 0.0);
      sum += spec.flux[c][i];
    }
    CHECK(spec.flux[total_col][i] == Approx(sum).margin(1e-9 * (1.0 + sum)));
    // Negative-norm optical emission only above its edge frequency.
    if (spec.flux[no_col][i] > 0.0) {
      CHECK(a > mk.negative_edge);
    }
  }
}

TEST_CASE("lab spectrum emits in the expected windows", "[spectra]") {
  const auto ctx = context_for(0.02);
  const auto markers = rif::lab_spectrum(ctx, {500e-9}, 1).markers;

  // One wavelength per regime: UV negative band, black-hole band,
  // white-hole band. Interior points come from the marker midpoints.
  const double lambda_uv =
      rif::units::omega_to_wavelength(1.05 * markers.negative_edge);
  const double lambda_bh = rif::units::omega_to_wavelength(
      0.5 * (markers.black_hole_low + markers.black_hole_high));
  const double lambda_wh = rif::units::omega_to_wavelength(
      0.5 * (markers.white_hole_low + markers.white_hole_high));
  const auto spec =
      rif::lab_spectrum(ctx, {lambda_uv, lambda_bh, lambda_wh}, 1);

  auto col = [&](const std::string& name) {
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      if (spec.columns[c] == name) {
        return c;
      }
    }
    throw std::runtime_error("missing column");
  };
  REQUIRE(spec.quarantine.empty());
  CHECK(spec.flux[col("noL")][0] > 0.0);
  CHECK(spec.flux[col("moR")][1] > 0.0);
  CHECK(spec.flux[col("loL")][2] > 0.0);
}
