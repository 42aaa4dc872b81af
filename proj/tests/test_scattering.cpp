#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rifscatter/scattering.hpp"

namespace {

const rif::FrontFrame kFrame(0.66);

constexpr double kBelowBoth = 0.01195559153288868;
constexpr double kLeftOnly = 0.0256522226964533;
constexpr double kOverlap = 0.048373561433703374;
constexpr double kRightOnly = 0.08419336548680073;
constexpr double kAboveBoth = 0.10893615747665635;

rif::StepContext context_for(double delta_n) {
  const auto m = rif::SellmeierMedium::fused_silica();
  return rif::make_context(rif::scale_medium(m, delta_n), kFrame);
}

std::vector<std::string> texts(const std::vector<rif::ModeLabel>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    out.push_back(l.text());
  }
  return out;
}

}  // namespace

TEST_CASE("mode counts and labels per configuration", "[scattering]") {
  const auto ctx = context_for(0.02);

  struct Case {
    double omega_prime;
    int n;
    std::vector<std::string> ins;
    std::vector<std::string> outs;
  };
  const std::vector<Case> cases = {
      {kBelowBoth, 6,
       {"b1nR", "b1pR", "b3nR", "b3pR", "noR", "uoR"},
       {"b1nL", "b1pL", "b3nL", "b3pL", "noL", "uoL"}},
      {kLeftOnly, 7,
       {"b1nR", "b1pR", "b3nR", "b3pR", "moL", "noR", "uoR"},
       {"b1nL", "b1pL", "b3nL", "b3pL", "loL", "noL", "uoL"}},
      {kOverlap, 8,
       {"b1nR", "b1pR", "b3nR", "b3pR", "loR", "moL", "noR", "uoR"},
       {"b1nL", "b1pL", "b3nL", "b3pL", "loL", "moR", "noL", "uoL"}},
      {kRightOnly, 7,
       {"b1nR", "b1pR", "b3nR", "b3pR", "loR", "noR", "uoR"},
       {"b1nL", "b1pL", "b3nL", "b3pL", "loL", "moR", "noL"}},
      {kAboveBoth, 6,
       {"b1nR", "b1pR", "b3nR", "b3pR", "loR", "noR"},
       {"b1nL", "b1pL", "b3nL", "b3pL", "loL", "noL"}},
  };

  int expected_config = 1;
  for (const auto& c : cases) {
    const auto sm = rif::s_matrix(ctx, c.omega_prime);
    CHECK(sm.s.rows() == c.n);
    CHECK(sm.s.cols() == c.n);
    CHECK(texts(sm.in_labels) == c.ins);
    CHECK(texts(sm.out_labels) == c.outs);
    CHECK(sm.unitarity_residual <= 1e-8);
    CHECK(sm.continuity_residual <= 1e-9);
    CHECK(sm.condition < 1e12);
    CHECK(static_cast<int>(sm.config.config) == expected_config);
    ++expected_config;

    // Metric signs match the labels.
    for (int i = 0; i < c.n; ++i) {
      const bool neg_in = c.ins[i].find('n') != std::string::npos &&
                          c.ins[i].substr(0, 2) != "uo";
      CHECK(sm.metric_in[i] == (neg_in ? -1 : 1));
    }
  }
}

TEST_CASE("pair production balances positive and negative norm", "[scattering]") {
  const auto ctx = context_for(0.02);
  for (double wp : {kLeftOnly, kOverlap, kRightOnly}) {
    const auto sm = rif::s_matrix(ctx, wp);
    const auto fluxes = rif::mode_fluxes(sm);
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t j = 0; j < sm.out_labels.size(); ++j) {
      const double f = fluxes.at(sm.out_labels[j].text());
      CHECK(f >= 0.0);
      (sm.metric_out[j] > 0 ? pos : neg) += f;
    }
    CHECK(pos == Approx(neg).epsilon(1e-8));
    CHECK(pos > 0.0);
  }
}

TEST_CASE("null step scatters nothing", "[scattering]") {
  const auto ctx = context_for(0.0);
  for (double wp : {kBelowBoth, kOverlap, kAboveBoth}) {
    const auto sm = rif::s_matrix(ctx, wp);
    for (int i = 0; i < sm.s.rows(); ++i) {
      std::string image = sm.in_labels[i].text();
      image.back() = image.back() == 'L' ? 'R' : 'L';
      for (int j = 0; j < sm.s.cols(); ++j) {
        if (sm.out_labels[j].text() == image) {
          CHECK(std::abs(sm.s(i, j) - rif::cdouble(1.0)) <= 1e-9);
        } else {
          CHECK(std::abs(sm.s(i, j)) <= 1e-10);
        }
      }
    }
    for (const auto& [label, f] : rif::mode_fluxes(sm)) {
      CHECK(f <= 1e-12);
    }
  }
}

TEST_CASE("weak step couples weakly", "[scattering]") {
  const auto ctx = context_for(1e-5);
  const auto sm = rif::s_matrix(ctx, kOverlap);
  CHECK(sm.unitarity_residual <= 1e-8);
  for (const auto& [label, f] : rif::mode_fluxes(sm)) {
    CHECK(f <= 1e-6);
    CHECK(f >= 0.0);
  }
}

TEST_CASE("global modes agree with the scattering matrix", "[scattering]") {
  const auto ctx = context_for(0.02);
  const double wp = kOverlap;
  const auto sm = rif::s_matrix(ctx, wp);
  const int n = static_cast<int>(sm.s.rows());

  for (int i = 0; i < n; ++i) {
    const auto gm = rif::global_mode(ctx, wp, rif::GlobalKind::In, sm.in_labels[i]);
    CHECK(gm.continuity_residual <= 1e-9);
    auto coeff = [&](const rif::ModeLabel& l) {
      const auto& side = l.side == rif::Side::Left ? gm.left_coefficients
                                                   : gm.right_coefficients;
      return side.at(l.text());
    };
    CHECK(std::abs(coeff(sm.in_labels[i]) - rif::cdouble(1.0)) == 0.0);
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(coeff(sm.out_labels[j]) - sm.s(i, j)) <= 1e-10);
    }
  }

  // An outgoing-defined global mode carries the incoming content demanded by
  // pseudo-unitarity: x_alpha = eta_in conj(S) eta_out.
  for (int j = 0; j < n; ++j) {
    const auto gm = rif::global_mode(ctx, wp, rif::GlobalKind::Out, sm.out_labels[j]);
    auto coeff = [&](const rif::ModeLabel& l) {
      const auto& side = l.side == rif::Side::Left ? gm.left_coefficients
                                                   : gm.right_coefficients;
      return side.at(l.text());
    };
    for (int i = 0; i < n; ++i) {
      const rif::cdouble want = static_cast<double>(sm.metric_in[i]) *
                                std::conj(sm.s(i, j)) *
                                static_cast<double>(sm.metric_out[j]);
      CHECK(std::abs(coeff(sm.in_labels[i]) - want) <= 1e-8);
    }
  }

  const rif::ModeLabel mo_r{rif::LabelKind::mo, 1, rif::Side::Right};
  CHECK_THROWS_AS(rif::global_mode(ctx, wp, rif::GlobalKind::In, mo_r),
                  rif::ValidationError);
}

TEST_CASE("flux lookup", "[scattering]") {
  const auto ctx = context_for(0.02);
  const auto sm = rif::s_matrix(ctx, kRightOnly);
  const auto fluxes = rif::mode_fluxes(sm);
  CHECK(rif::flux_density(sm, "moR") == fluxes.at("moR"));
  CHECK(fluxes.count("moL") == 0);
  CHECK_THROWS_AS(rif::flux_density(sm, "zzz"), rif::ValidationError);

  double by_hand = 0.0;
  for (int i = 0; i < sm.s.rows(); ++i) {
    int col = -1;
    for (int j = 0; j < sm.s.cols(); ++j) {
      if (sm.out_labels[j].text() == "moR") {
        col = j;
      }
    }
    REQUIRE(col >= 0);
    if (sm.metric_in[i] != sm.metric_out[col]) {
      by_hand += std::norm(sm.s(i, col));
    }
  }
  CHECK(rif::flux_density(sm, "moR") == Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("solver guard rails", "[scattering]") {
  auto ctx = context_for(0.02);
  CHECK_THROWS_AS(rif::s_matrix(ctx, -0.01), rif::ValidationError);
  CHECK_THROWS_AS(rif::s_matrix(ctx, ctx.scope_max * 1.01), rif::ValidationError);

  auto strict = ctx;
  strict.options.condition_max = 1.0;
  CHECK_THROWS_AS(rif::s_matrix(strict, kOverlap), rif::MatchingError);

  auto paranoid = ctx;
  paranoid.options.unitarity_tol = 1e-18;
  CHECK_THROWS_AS(rif::s_matrix(paranoid, kOverlap), rif::UnitarityError);
}
