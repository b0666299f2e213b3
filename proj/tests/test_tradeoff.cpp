#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixmds/error.hpp"
#include "mixmds/galois.hpp"
#include "mixmds/rng.hpp"
#include "mixmds/tradeoff.hpp"

using namespace mixmds;

namespace {

const Rational kOne{1};

// Smallest prime power q > threshold with exponent divisible by b, by
// scanning integers upward.
std::uint64_t scan_q2(std::uint64_t threshold, unsigned b) {
  for (std::uint64_t q = threshold + 1;; ++q) {
    auto pp = prime_power_decompose(q);
    if (pp && pp->second % b == 0) return q;
  }
}

std::vector<Rational> r_grid(const Rational& eps) {
  std::vector<Rational> out;
  for (int i = 1; i < 20; ++i) {
    Rational R(i, 20);
    if (R > eps + Rational(1, 2)) out.push_back(R);
  }
  out.push_back(kOne);
  return out;
}

}  // namespace

TEST_CASE("rate bound of the mixed expander code") {
  CHECK(rate_bound_eq5(kOne, Rational(9, 10), Rational(1, 5), Rational(1, 2)) == kOne);
  CHECK(rate_bound_eq5(Rational(4, 5), Rational(9, 10), Rational(0), Rational(1, 2)) == Rational(7, 9));
  CHECK(Rational(7, 9) == (Rational(9, 10) + Rational(4, 5) - kOne) / Rational(9, 10));
  try {
    rate_bound_eq5(Rational(1, 2), Rational(1, 4), Rational(1, 2), Rational(1, 2));
    FAIL("expected DegenerateDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateDenominator);
  }
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    Rational R(static_cast<std::int64_t>(rng.below(21)), 20);
    Rational r(static_cast<std::int64_t>(1 + rng.below(20)), 20);
    Rational p(static_cast<std::int64_t>(rng.below(21)), 20);
    Rational a(1, static_cast<std::int64_t>(2 + rng.below(5)));
    Rational den = p * (a - kOne) + r;
    if (den <= Rational(0)) continue;
    CHECK(rate_bound_eq5(R, r, p, a) == (p * (a - kOne) + R + r - kOne) / den);
  }
}

TEST_CASE("spectral distance bound") {
  auto b0 = dist_bound_eq6(0.3, 0.2, 0.0);
  CHECK(b0.value == 0.3);
  CHECK_FALSE(b0.vacuous);
  auto bv = dist_bound_eq6(0.25, 0.25, 0.5);
  CHECK(bv.value == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(bv.vacuous);
  CHECK_THROWS_AS(dist_bound_eq6(0.3, 0.0, 0.1), Error);
  CHECK_THROWS_AS(dist_bound_eq6(0.3, 0.2, 1.0), Error);
  CHECK_THROWS_AS(dist_bound_eq6(0.3, 0.2, -0.1), Error);
  CHECK(ramanujan_gamma(4) == doctest::Approx(0.8660254037844386).epsilon(1e-12));
}

TEST_CASE("smallest admissible q2 agrees with an integer scan") {
  CHECK(smallest_admissible_q2(Rational(4000), Rational(1, 2)) == 4096);
  CHECK(smallest_admissible_q2(Rational(32000), Rational(1, 2)) == 179 * 179);
  for (std::uint64_t th : {1u, 2u, 7u, 15u, 16u, 100u, 500u, 1000u, 4000u, 9999u}) {
    for (unsigned b : {2u, 3u, 4u}) {
      CAPTURE(th);
      CAPTURE(b);
      CHECK(smallest_admissible_q2(Rational(static_cast<std::int64_t>(th)), Rational(1, b)) == scan_q2(th, b));
    }
    CHECK(smallest_admissible_q2(Rational(static_cast<std::int64_t>(th)), Rational(2, 3)) == scan_q2(th, 3));
  }
  CHECK(smallest_admissible_q2(Rational(7, 2), Rational(1, 2)) == 4);
  CHECK_THROWS_AS(smallest_admissible_q2(Rational(10), Rational(1)), Error);
}

TEST_CASE("design point eps = 0.1, R = 0.7") {
  auto d = design_point_sec2(Rational(1, 10), Rational(7, 10), Rational(1, 2), kOne);
  CHECK(d.Delta == 4000);
  CHECK(d.q2 == 4096);
  CHECK(d.q1 == 64);
  CHECK(d.rate_margin_ok);
  CHECK(d.p_cap_ok);
  CHECK(d.theta == Rational(1, 10));
  CHECK(d.r == Rational(3601, 4000));
  CHECK(d.p == Rational(1, 5));
  CHECK(d.rate_chain == Rational(5, 8));
  CHECK(d.rate_target == Rational(3, 5));
  CHECK(d.rate_bound >= d.rate_chain);
  CHECK(d.rate_chain > d.rate_target);
  CHECK(d.rate_chain_ok);
  CHECK(d.dist_ok);
  CHECK(d.dist_bound > 1 - 0.7 - 0.1);
  CHECK(d.phi_ok);
  CHECK(d.phi_exp == Rational(1) - d.p * Rational(1, 2) / d.r);
  CHECK(d.phi_exp <= Rational(9, 10));
  CHECK(d.violations.empty());
  try {
    design_point_sec2(Rational(1, 10), Rational(55, 100), Rational(1, 2), kOne);
    FAIL("expected ConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConditionViolated);
    CHECK(std::string(e.what()).find("R > eps + 1/2") != std::string::npos);
  }
  auto soft = evaluate_sec2(Rational(1, 10), Rational(55, 100), Rational(1, 2), kOne);
  CHECK_FALSE(soft.rate_margin_ok);
  CHECK_FALSE(soft.violations.empty());
}

TEST_CASE("decodable chain over eps in {0.05, 0.1, 0.2}") {
  for (auto eps : {Rational(1, 20), Rational(1, 10), Rational(1, 5)}) {
    for (auto alpha : {Rational(1, 2), Rational(1, 3), Rational(2, 3)}) {
      for (const auto& R : r_grid(eps)) {
        auto d = evaluate_sec2(eps, R, alpha, kOne);
        CAPTURE(eps);
        CAPTURE(R);
        CAPTURE(alpha);
        REQUIRE(d.rate_margin_ok);
        REQUIRE(d.p_cap_ok);
        CHECK(d.Delta == static_cast<std::uint64_t>((Rational(4) / (eps * eps * eps)).ceil()));
        CHECK(d.q2 > d.Delta);
        CHECK(d.rate_bound >= d.rate_bound_nominal);
        CHECK(d.rate_bound_nominal >= (R - Rational(2) * eps) / (kOne - Rational(2) * eps));
        CHECK((R - Rational(2) * eps) / (kOne - Rational(2) * eps) > R - eps);
        CHECK(d.rate_chain_ok);
        CHECK(d.dist_ok);
        CHECK(d.phi_ok);
        CHECK(d.phi_exp_cap <= kOne - eps);
        CHECK(d.phi_exp <= kOne);
      }
    }
  }
}

TEST_CASE("rate-loss comparison") {
  auto c = compare_sec2e(Rational(1, 10), Rational(7, 10), 4000, 4096);
  CHECK(c.rate_loss == Rational(1, 13));
  CHECK(c.rate_loss_closed == Rational(1, 13));
  CHECK(c.rate_loss < Rational(1, 10));
  CHECK(c.loss_cap == Rational(1, 11));
  CHECK(c.loss_below_cap);
  CHECK(c.cap_below_eps);
  CHECK(c.original_exceeds_floor);
  auto toy = compare_sec2e(Rational(1, 2), Rational(1), 32, 64);
  CHECK(toy.alphabet_ratio == doctest::Approx(1.0));
  CHECK(toy.log10_complement == doctest::Approx(-16 * std::log10(64.0)).epsilon(1e-12));
  CHECK(c.rate_margin_ok);
  CHECK_FALSE(toy.rate_margin_ok);
  CHECK_FALSE(compare_sec2e(Rational(1, 10), Rational(1, 2), 4000, 4096).rate_margin_ok);

  // Along the Delta = ceil(4/eps^3) schedule the complement shrinks and the
  // rate loss falls as eps decreases.
  double prev_log = 0;
  Rational prev_loss(1);
  for (auto eps : {Rational(1, 5), Rational(1, 10), Rational(1, 20), Rational(1, 40)}) {
    auto d = evaluate_sec2(eps, Rational(4, 5), Rational(1, 2), kOne);
    auto cmp = compare_sec2e(eps, Rational(4, 5), d.Delta, d.q2);
    CHECK(cmp.log10_complement < prev_log);
    CHECK(cmp.rate_loss < prev_loss);
    CHECK(cmp.rate_loss == eps / (Rational(8, 5) - eps));
    CHECK(cmp.alphabet_ratio <= 1.0L);
    prev_log = cmp.log10_complement;
    prev_loss = cmp.rate_loss;
  }
}

TEST_CASE("encodable construction: single points") {
  auto d = sec3_tradeoff(Rational(1, 10), Rational(9, 10), Rational(99, 100), Rational(1, 2), Rational(1, 4),
                         Rational(1000), Rational(1, 10), Rational(1, 2));
  CHECK(d.s_cap == Rational(1, 18));
  CHECK(d.s_floor == Rational(4, 121));
  CHECK(d.s_floor.to_double() == doctest::Approx(0.03306).epsilon(1e-4));
  CHECK(d.s == Rational(1, 20));
  CHECK(d.excess == Rational(1, 45));
  CHECK(d.Delta2 * d.r_m * d.R == (kOne - d.r0) * d.Delta1);
  CHECK(d.gap == d.gap_closed);
  CHECK(d.gap > Rational(0));
  CHECK(d.rel_loss < d.s / d.R);
  try {
    sec3_tradeoff(Rational(1, 10), Rational(9, 10), Rational(9, 10), Rational(1, 2), Rational(1, 4), Rational(1000),
                  Rational(1, 10), Rational(1, 2));
    FAIL("expected ConstraintViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConstraintViolated);
  }
  CHECK_THROWS_AS(sec3_tradeoff(Rational(1, 10), Rational(9, 10), Rational(99, 100), Rational(1, 5), Rational(1, 4),
                                Rational(1000), Rational(1, 10), Rational(1, 2)),
                  Error);
  CHECK_THROWS_AS(sec3_tradeoff(Rational(1, 10), Rational(1, 2), Rational(99, 100), Rational(1, 2), Rational(1, 4),
                                Rational(1000), Rational(3, 5), Rational(1, 2)),
                  Error);
}

TEST_CASE("encodable construction: swept properties") {
  std::size_t in_regime = 0;
  for (auto eps : {Rational(1, 20), Rational(1, 10), Rational(1, 5)}) {
    for (int Ri = 10; Ri <= 20; ++Ri) {
      Rational R(Ri, 20);
      for (int pi = 0; pi <= 20; ++pi) {
        Rational p(pi, 100);
        if (p > R) continue;
        for (auto alpha : {Rational(1, 2), Rational(1, 4)}) {
          for (auto r_m : {Rational(1, 4), Rational(1, 2), Rational(9, 10)}) {
            Rational r0 = kOne - Rational(1, 5) * Rational(1, 4) * eps;  // 1 - r0 < kappa eps
            auto d = sec3_tradeoff(eps, R, r0, r_m, Rational(1, 4), Rational(1000), p, alpha);
            CHECK(d.gap == d.gap_closed);
            CHECK(d.gap_ok);
            CHECK(d.rel_loss_ok);
            CHECK(d.exp_ok);
            CHECK(d.residual_ok == (d.s <= d.s_cap));
            if (d.s > Rational(0)) {
              CHECK(d.exp_ratio < d.exp_ratio_bound);
              CHECK(d.Gamma_exp < d.gamma_exp);
            }
            if (d.s_in_interval) {
              CHECK(d.exp_range_low <= d.exp_ratio_bound);
              CHECK(d.exp_ratio_bound <= d.exp_range_high);
            }
            if (d.s_in_interval && d.R_threshold_ok) {
              ++in_regime;
              CHECK(d.quad_residual >= Rational(0));
              if (d.quad_residual > Rational(0)) CHECK(d.rate_bound_enc > R - eps);
              CHECK(d.rate_ok == (d.rate > R - eps));
              if (d.rm_ge_kappa && d.r0_ok) CHECK(d.rate > d.rate_bound_enc);
            }
            // The residual is positive exactly when the rate bound exceeds R - eps.
            CHECK((d.quad_residual > Rational(0)) == (d.rate_bound_enc > R - eps));
          }
        }
      }
    }
  }
  CHECK(in_regime > 0);
}

TEST_CASE("sweeps and tables") {
  Grid2 empty;
  CHECK(sweep(empty).empty());
  auto t0 = table_sec2(sweep(empty));
  CHECK(t0.rows.empty());
  CHECK(t0.columns.size() > 10);
  std::vector<std::string> prefix{"eps", "R", "r", "p", "alpha", "Delta", "q2", "rate_bound", "dist_bound", "phi_exp"};
  CHECK(std::vector<std::string>(t0.columns.begin(), t0.columns.begin() + 10) == prefix);

  Grid2 one{{Rational(1, 10)}, {Rational(7, 10)}, {Rational(1, 2)}};
  auto pts = sweep(one);
  REQUIRE(pts.size() == 1);
  auto single = evaluate_sec2(Rational(1, 10), Rational(7, 10), Rational(1, 2), kOne);
  CHECK(pts[0].rate_bound == single.rate_bound);
  CHECK(pts[0].dist_bound == single.dist_bound);
  auto t = table_sec2(pts);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::get<double>(t.rows[0][13]) == 0.625);

  Grid3 g3{{Rational(1, 10)}, {Rational(9, 10)}, {Rational(1, 10)}, {Rational(1, 2)}, {Rational(99, 100)}, {Rational(1, 2)}};
  auto p3 = sweep(g3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].s_cap == Rational(1, 18));
  auto t3 = table_sec3(p3);
  CHECK(t3.rows.size() == 1);
  CHECK(t3.columns.front() == "eps");
}
