#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "rifscatter/modes.hpp"

namespace {

const rif::FrontFrame kFrame(0.66);

// Comoving frequencies probing each horizon configuration at delta_n = 0.02.
constexpr double kBelowBoth = 0.01195559153288868;
constexpr double kLeftOnly = 0.0256522226964533;
constexpr double kOverlap = 0.048373561433703374;
constexpr double kRightOnly = 0.08419336548680073;
constexpr double kAboveBoth = 0.10893615747665635;

std::set<std::string> label_set(const std::vector<rif::ModeRoot>& roots) {
  std::set<std::string> s;
  for (const auto& r : roots) {
    s.insert(r.label.text());
  }
  return s;
}

}  // namespace

TEST_CASE("branch windows", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto w1 = rif::branch_window(m, 1);
  CHECK(w1.lo == 0.0);
  CHECK(w1.hi == m.omega_r[0]);
  const auto w2 = rif::branch_window(m, 2);
  CHECK(w2.lo == Approx(0.12059478442533471).epsilon(1e-10));
  CHECK(w2.hi == m.omega_r[1]);
  const auto w3 = rif::branch_window(m, 3);
  CHECK(w3.lo == Approx(9.390146075216682).epsilon(1e-10));
  const auto w4 = rif::branch_window(m, 4);
  CHECK(w4.lo == Approx(19.440806658043467).epsilon(1e-10));
  CHECK(std::isinf(w4.hi));
  CHECK_THROWS_AS(rif::branch_window(m, 5), rif::ValidationError);
  CHECK_THROWS_AS(rif::branch_window(rif::SellmeierMedium::vacuum(), 2),
                  rif::ValidationError);
}

TEST_CASE("dispersion polynomial structure", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto p = rif::dispersion_polynomial(m, 0.05, kFrame);
  REQUIRE(p.degree() == 8);
  CHECK(p.c[8] == Approx(1.0 - 1.0 / (0.66 * 0.66)).epsilon(1e-12));

  // On-shell lab frequencies are polynomial roots: forward, backward and
  // negative-pattern waves on the optical branch.
  auto check_root = [&](double omega_prime, double lab_omega) {
    const auto q = rif::dispersion_polynomial(m, omega_prime, kFrame);
    const double res =
        std::abs(rif::poly_eval(q, lab_omega)) / rif::poly_eval_scale(q, lab_omega);
    CHECK(res <= 1e-12);
  };
  for (double x : {0.5, 0.8, 1.6}) {
    const double n = rif::refractive_index_w(m, x);
    check_root(kFrame.gamma * x * (1.0 - kFrame.u * n), x);
    check_root(kFrame.gamma * x * (1.0 + kFrame.u * n), x);
  }
  const double x_neg = 5.0;  // phase index above 1/u, negative-norm pattern
  const double n_neg = rif::refractive_index_w(m, x_neg);
  REQUIRE(n_neg > 1.0 / kFrame.u);
  check_root(kFrame.gamma * x_neg * (kFrame.u * n_neg - 1.0), -x_neg);
}

TEST_CASE("vacuum limit factorizes", "[modes]") {
  const auto v = rif::SellmeierMedium::vacuum();
  const auto p = rif::dispersion_polynomial(v, 0.3, kFrame);
  auto roots = rif::poly_roots(p);
  REQUIRE(roots.size() == 8);
  std::vector<double> expected = {0.6628814107409277, 0.13577089135657552};
  for (int i = 0; i < 3; ++i) {
    expected.push_back(v.omega_r[i]);
    expected.push_back(-v.omega_r[i]);
  }
  for (double e : expected) {
    double best = 1e300;
    for (const auto& z : roots) {
      best = std::min(best, std::abs(z - e));
    }
    CHECK(best <= 1e-9 * std::abs(e));
  }
}

TEST_CASE("frozen subluminal intervals", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto right = rif::find_sli(m, kFrame, rif::Side::Right);
  REQUIRE(right.has_value());
  CHECK(right->omega_min == Approx(0.02739326232712924).epsilon(1e-9));
  CHECK(right->omega_max == Approx(0.09903287043332394).epsilon(1e-9));
  CHECK(right->lab_omega_low == Approx(0.27844567591157127).epsilon(1e-9));
  CHECK(right->lab_omega_high == Approx(2.5275439338615593).epsilon(1e-9));

  // Edge self-consistency: group index matches the front and the comoving
  // frequency maps back to the interval edge.
  for (double x : {right->lab_omega_low, right->lab_omega_high}) {
    CHECK(rif::group_index_w(m, x) == Approx(1.0 / kFrame.u).epsilon(1e-9));
  }
  const double n_low = rif::refractive_index_w(m, right->lab_omega_low);
  CHECK(kFrame.gamma * right->lab_omega_low * (1.0 - kFrame.u * n_low) ==
        Approx(right->omega_min).epsilon(1e-12));

  const auto step = rif::scale_medium(m, 0.02);
  const auto left = rif::find_sli(step.left, kFrame, rif::Side::Left);
  REQUIRE(left.has_value());
  CHECK(left->omega_min == Approx(0.02391118306577736).epsilon(1e-9));
  CHECK(left->omega_max == Approx(0.0693538605402775).epsilon(1e-9));
  CHECK(left->lab_omega_low == Approx(0.29971398321632897).epsilon(1e-9));
  CHECK(left->lab_omega_high == Approx(2.210167047353248).epsilon(1e-9));

  // Generic interleaved ordering of the four edges.
  CHECK(left->omega_min < right->omega_min);
  CHECK(right->omega_min < left->omega_max);
  CHECK(left->omega_max < right->omega_max);

  // A very high step pushes every optical group velocity below the front.
  const auto big = rif::scale_medium(m, 0.15);
  CHECK_FALSE(rif::find_sli(big.left, kFrame, rif::Side::Left).has_value());

  // A faster front than the group-index minimum admits no interval either.
  CHECK_FALSE(rif::find_sli(m, rif::FrontFrame(0.7), rif::Side::Right).has_value());
  CHECK_FALSE(rif::find_sli(m, rif::FrontFrame(0.0), rif::Side::Right).has_value());
}

TEST_CASE("root census and labels across configurations", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto step = rif::scale_medium(m, 0.02);
  const auto sli_l = rif::find_sli(step.left, kFrame, rif::Side::Left);
  const auto sli_r = rif::find_sli(step.right, kFrame, rif::Side::Right);
  REQUIRE(sli_l);
  REQUIRE(sli_r);

  struct Expect {
    double omega_prime;
    bool in_left;
    bool in_right;
    std::string single_optical;  // label of the lone positive optical outside
  };
  const std::vector<Expect> cases = {
      {kBelowBoth, false, false, "uo"},
      {kLeftOnly, true, false, "uo"},
      {kOverlap, true, true, ""},
      {kRightOnly, false, true, "lo"},
      {kAboveBoth, false, false, "lo"},
  };

  for (const auto& c : cases) {
    for (rif::Side side : {rif::Side::Left, rif::Side::Right}) {
      const bool left_side = side == rif::Side::Left;
      const auto& medium = left_side ? step.left : step.right;
      const auto& sli = left_side ? sli_l : sli_r;
      const bool inside = left_side ? c.in_left : c.in_right;
      const auto roots = rif::solve_modes(medium, c.omega_prime, kFrame, side, sli);
      REQUIRE(roots.size() == 8);

      int props = 0;
      int forward = 0;
      for (const auto& r : roots) {
        CHECK(r.residual <= 1e-9);
        const rif::cdouble back =
            kFrame.gamma * (r.lab.omega - kFrame.u * r.lab.k);
        CHECK(std::abs(back - rif::cdouble(c.omega_prime)) <=
              1e-10 * c.omega_prime);
        if (r.propagating) {
          ++props;
          CHECK(r.lab.omega.imag() == 0.0);
          CHECK(r.norm_sign == (r.lab.omega.real() > 0.0 ? 1 : -1));
          if (r.v_g_comoving > 0.0) {
            ++forward;
          }
          // Comoving group velocity respects velocity addition.
          const double v = r.v_g_lab;
          CHECK(r.v_g_comoving ==
                Approx((v - kFrame.u) / (1.0 - kFrame.u * v)).margin(1e-12));
        }
      }
      CHECK(props == (inside ? 8 : 6));
      CHECK(forward == (inside ? 1 : 0));

      const char s = left_side ? 'L' : 'R';
      std::set<std::string> want;
      for (const std::string base : {"b1p", "b1n", "b3p", "b3n", "no"}) {
        want.insert(base + s);
      }
      if (inside) {
        want.insert(std::string("lo") + s);
        want.insert(std::string("mo") + s);
        want.insert(std::string("uo") + s);
      } else {
        want.insert(c.single_optical + s);
        want.insert(std::string("evd") + s);
        want.insert(std::string("evg") + s);
      }
      CHECK(label_set(roots) == want);

      // Output ordering is the label ordering.
      for (std::size_t i = 1; i < roots.size(); ++i) {
        CHECK(roots[i - 1].label.text() < roots[i].label.text());
      }

      if (!inside) {
        const rif::ModeRoot* evd = nullptr;
        const rif::ModeRoot* evg = nullptr;
        for (const auto& r : roots) {
          if (r.label.kind == rif::LabelKind::ev_decay) {
            evd = &r;
          }
          if (r.label.kind == rif::LabelKind::ev_grow) {
            evg = &r;
          }
        }
        REQUIRE(evd != nullptr);
        REQUIRE(evg != nullptr);
        CHECK(evd->comoving.k.imag() > 0.0);
        CHECK(evg->comoving.k.imag() < 0.0);
        CHECK(std::abs(evd->comoving.k - std::conj(evg->comoving.k)) <=
              1e-10 * std::abs(evd->comoving.k));
        CHECK(evd->norm_sign == 0);
        CHECK(evd->branch == 0);
      }
    }
  }
}

TEST_CASE("middle optical is the unique forward mover", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto sli = rif::find_sli(m, kFrame, rif::Side::Right);
  REQUIRE(sli);
  for (double t : {0.1, 0.35, 0.6, 0.9}) {
    const double wp = sli->omega_min + t * (sli->omega_max - sli->omega_min);
    const auto roots = rif::solve_modes(m, wp, kFrame, rif::Side::Right, sli);
    double k_lo = 0.0, k_mo = 0.0, k_uo = 0.0;
    for (const auto& r : roots) {
      if (r.label.kind == rif::LabelKind::lo) {
        k_lo = r.comoving.k.real();
      }
      if (r.label.kind == rif::LabelKind::mo) {
        k_mo = r.comoving.k.real();
        CHECK(r.v_g_comoving > 0.0);
      }
      if (r.label.kind == rif::LabelKind::uo) {
        k_uo = r.comoving.k.real();
      }
    }
    CHECK(k_lo < k_mo);
    CHECK(k_mo < k_uo);
  }
}

TEST_CASE("scope ceiling on the comoving frequency", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const double scope = rif::omega_prime_scope_max(m, kFrame);
  CHECK(scope > 16.2);
  CHECK(scope < 16.6);
  CHECK_NOTHROW(rif::solve_modes(m, 16.0, kFrame, rif::Side::Right));
  CHECK_THROWS_AS(rif::solve_modes(m, scope * 1.05, kFrame, rif::Side::Right),
                  rif::ValidationError);
  CHECK_THROWS_AS(rif::solve_modes(m, -0.1, kFrame, rif::Side::Right),
                  rif::ValidationError);
  CHECK_THROWS_AS(rif::solve_modes(m, 0.05, rif::FrontFrame(0.0), rif::Side::Right),
                  rif::ValidationError);
  CHECK_THROWS_AS(
      rif::solve_modes(rif::SellmeierMedium::vacuum(), 0.05, kFrame, rif::Side::Right),
      rif::ValidationError);
}

TEST_CASE("steep step keeps a single optical branch", "[modes]") {
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto big = rif::scale_medium(m, 0.15);
  const auto roots =
      rif::solve_modes(big.left, 0.05, kFrame, rif::Side::Left, std::nullopt);
  REQUIRE(roots.size() == 8);
  const auto labels = label_set(roots);
  CHECK(labels.count("loL") == 1);
  CHECK(labels.count("moL") == 0);
  int props = 0;
  for (const auto& r : roots) {
    props += r.propagating ? 1 : 0;
  }
  CHECK(props == 6);
}

TEST_CASE("configuration classification", "[modes]") {
  using HC = rif::HorizonConfiguration;
  const auto m = rif::SellmeierMedium::fused_silica();
  const auto step = rif::scale_medium(m, 0.02);
  const auto left = rif::find_sli(step.left, kFrame, rif::Side::Left);
  const auto right = rif::find_sli(step.right, kFrame, rif::Side::Right);

  CHECK(rif::configuration(kBelowBoth, left, right).config == HC::NoHorizonLow);
  CHECK(rif::configuration(kLeftOnly, left, right).config == HC::WhiteHole);
  CHECK(rif::configuration(kOverlap, left, right).config == HC::HorizonlessOverlap);
  CHECK(rif::configuration(kRightOnly, left, right).config == HC::BlackHole);
  CHECK(rif::configuration(kAboveBoth, left, right).config == HC::NoHorizonHigh);

  CHECK(rif::configuration(right->omega_min, left, right).degenerate);
  CHECK(rif::configuration(left->omega_max, left, right).degenerate);
  CHECK_FALSE(rif::configuration(kOverlap, left, right).degenerate);

  CHECK(rif::configuration(kOverlap, std::nullopt, right).config == HC::BlackHole);
  CHECK(rif::configuration(kBelowBoth, std::nullopt, right).config == HC::NoHorizonLow);
  CHECK(rif::configuration(kAboveBoth, std::nullopt, right).config == HC::NoHorizonHigh);
  CHECK_THROWS_AS(rif::configuration(kOverlap, left, std::nullopt),
                  rif::ValidationError);
}
