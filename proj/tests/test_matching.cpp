#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "elastica/matching.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace elastica;
using testutil::Rng;
using Complex = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;

CurveGenerator blob(double a2, double a3, double phase) {
  return {[=](double t) {
            const double ang = 2 * pi * t;
            const double r = 1.0 + a2 * std::cos(2 * ang + phase) + a3 * std::sin(3 * ang);
            return Complex(r * std::cos(ang), r * std::sin(ang));
          },
          true};
}
}  // namespace

TEST_CASE("optimal rotation recovery") {
  Rng rng(41);
  const ElasticParams p(1.0, 0.5);
  const auto q1 = forward(testutil::random_curve(rng, 20, 3.0), p);

  CHECK(optimal_rotation(q1, q1) == doctest::Approx(0.0));

  const double alpha = 1.234;
  const auto q2 = rotate_transform(q1, -alpha);
  CHECK(optimal_rotation(q1, q2) == doctest::Approx(alpha).epsilon(1e-12));

  SUBCASE("beats a brute-force angle sweep") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto qa = forward(testutil::random_curve(rng, 15, 3.0), p);
      const auto qb = forward(testutil::random_curve(rng, 11, 3.0), p);
      const double phi = optimal_rotation(qa, qb);
      const double opt = l2_distance(qa, rotate_transform(qb, phi));
      double best_sweep = std::numeric_limits<double>::infinity();
      for (int s = 0; s < 360; ++s)
        best_sweep = std::min(best_sweep,
                              l2_distance(qa, rotate_transform(qb, 2 * pi * s / 360.0)));
      CHECK(opt <= best_sweep + 1e-10);
    }
  }
}

TEST_CASE("DP reparameterization") {
  Rng rng(42);
  const ElasticParams p(1.0, 0.5);

  SUBCASE("identical inputs give the identity warp at zero cost") {
    const auto c = resample_uniform(testutil::random_curve(rng, 16, 3.0), 17);
    const auto q = forward(c, p);
    const auto dp = dp_reparameterize(q, q, 16, 4);
    CHECK(dp.cost <= 1e-14);
    for (Eigen::Index i = 0; i < dp.gamma.breakpoints.size(); ++i)
      CHECK(dp.gamma.values[i] == doctest::Approx(dp.gamma.breakpoints[i]).epsilon(1e-14));
  }

  SUBCASE("construct and recover a grid warp") {
    // Power-of-two grid and window 2 keep every warp preimage exactly
    // representable, so recovery is clean of breakpoint slivers.
    const int n = 32;
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = resample_uniform(testutil::random_curve(rng, 20, 2.5), n + 1);
      const auto q1 = forward(c, p);
      const auto gamma0 = testutil::random_grid_warp(rng, n, 2);
      const auto q2 = reparam_action(gamma0, q1);
      const auto dp = dp_reparameterize(q1, q2, n, 4);
      CHECK(std::sqrt(std::max(dp.cost, 0.0)) <= 1e-8);
      // The recovered warp undoes gamma0.
      const auto round = compose(gamma0, dp.gamma);
      for (Eigen::Index i = 0; i < round.breakpoints.size(); ++i)
        CHECK(round.values[i] == doctest::Approx(round.breakpoints[i]).epsilon(1e-9));
      // DP cost agrees with the realized distance.
      CHECK(l2_distance(q1, reparam_action(dp.gamma, q2)) ==
            doctest::Approx(std::sqrt(std::max(dp.cost, 0.0))).epsilon(1e-9));
    }
  }

  SUBCASE("small instances match exhaustive path enumeration") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + int(rng() % 7);
      const auto c1 = resample_uniform(testutil::random_curve(rng, 8, 3.0), n + 1);
      const auto c2 = resample_uniform(testutil::random_curve(rng, 9, 3.0), n + 1);
      const auto q1 = forward(c1, p);
      const auto q2 = forward(c2, p);
      const auto dp = dp_reparameterize(q1, q2, n, n);
      const double oracle = testutil::brute_force_warp_cost(q1, q2, n, n);
      CHECK(dp.cost == doctest::Approx(oracle).epsilon(1e-10));
    }
  }

  SUBCASE("refinement with nested windows never hurts") {
    const auto c1 = testutil::random_curve(rng, 18, 3.0);
    const auto c2 = testutil::random_curve(rng, 13, 3.0);
    const auto q1 = forward(c1, p);
    const auto q2 = forward(c2, p);
    const double coarse = dp_reparameterize(q1, q2, 16, 4).cost;
    const double fine = dp_reparameterize(q1, q2, 32, 8).cost;
    CHECK(fine <= coarse + 1e-10);
  }
}

TEST_CASE("open-curve matching") {
  Rng rng(43);
  MatchOptions opts;
  opts.grid_n = 48;
  const ElasticParams p(1.0, 0.5);

  SUBCASE("a curve matches itself at distance zero") {
    const auto c = testutil::random_curve(rng, 30, 3.0);
    const auto m = match_open(c, c, p, opts);
    CHECK(m.distance <= 1e-10);
  }

  SUBCASE("rigid rotations are matched exactly") {
    const auto c = testutil::random_curve(rng, 25, 2.5, 0.4);
    const auto m = match_open(c, rotate_curve(c, 0.9), p, opts);
    CHECK(m.distance <= 1e-8);
  }

  SUBCASE("reparameterized copies collapse to a small residual") {
    // Block-coordinate descent starts with a rotation fitted to the unwarped
    // pair, so warped copies land at a small local optimum rather than zero;
    // the residual must still be far below the unmatched gap.
    MatchOptions dyadic = opts;
    dyadic.grid_n = 64;
    const auto c = resample_uniform(testutil::random_curve(rng, 20, 2.5), dyadic.grid_n + 1);
    const auto gamma0 = testutil::random_grid_warp(rng, dyadic.grid_n, 2);
    const auto warped = compose_curve(c, gamma0);
    const auto cn = normalize(c, true, false);
    const auto wn = normalize(warped, true, false);
    const double unmatched = l2_distance(forward(cn, p), forward(wn, p));
    const auto m = match_open(c, warped, p, dyadic);
    CHECK(m.distance <= 0.15 * unmatched);
  }

  SUBCASE("matched distance is reparameterization-invariant within two percent") {
    Rng rng2(77);
    const auto c1 = testutil::smooth_open_curve(rng2, 80);
    const auto c2 = testutil::smooth_open_curve(rng2, 90);
    const double base = match_open(c1, c2, p, opts).distance;
    for (int trial = 0; trial < 3; ++trial) {
      const auto gamma0 = testutil::random_grid_warp(rng2, opts.grid_n, 2);
      const double warped = match_open(c1, compose_curve(c2, gamma0), p, opts).distance;
      CHECK(std::abs(warped - base) <= 0.02 * base);
    }
  }

  SUBCASE("empirical symmetry within two percent at the default grid") {
    MatchOptions dflt;  // grid 128, window 4
    Rng rng2(4300);
    for (int trial = 0; trial < 4; ++trial) {
      const auto c1 = testutil::smooth_open_curve(rng2, 80);
      const auto c2 = testutil::smooth_open_curve(rng2, 90);
      const double d12 = match_open(c1, c2, p, dflt).distance;
      const double d21 = match_open(c2, c1, p, dflt).distance;
      CHECK(std::abs(d12 - d21) <= 0.02 * std::max(d12, d21));
    }
  }
}

TEST_CASE("closed-curve matching") {
  Rng rng(44);
  MatchOptions opts;
  opts.grid_n = 32;
  const ElasticParams p(1.0, 0.5);

  SUBCASE("cyclic shifts are recovered") {
    const auto c = resample_uniform(secant_sample(blob(0.25, 0.1, 0.4), 33), 33);
    const auto shifted = cyclic_shift(c, 7);
    const auto m = match_closed(c, shifted, p, opts);
    CHECK(m.distance <= 1e-8);
  }

  SUBCASE("every seed of a regular polygon ties") {
    const auto ngon = resample_uniform(secant_sample(generators::circle(), 33), 33);
    const auto q1 = forward(normalize(ngon, true, false), p);
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (int s = 0; s < 32; ++s) {
      const auto shifted = cyclic_shift(normalize(ngon, true, false), s);
      const auto m = detail::alternate(q1, forward(shifted, p), opts);
      lo = std::min(lo, m.distance);
      hi = std::max(hi, m.distance);
    }
    CHECK(hi - lo <= 1e-10);
  }

  SUBCASE("finer seed granularity never increases the distance") {
    const auto c1 = secant_sample(blob(0.3, 0.05, 0.0), 33);
    const auto c2 = secant_sample(blob(0.1, 0.25, 1.1), 33);
    double prev = std::numeric_limits<double>::infinity();
    for (int seeds : {4, 8, 16, 32}) {
      MatchOptions o = opts;
      o.seed_count = seeds;
      const double d = match_closed(c1, c2, p, o).distance;
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("injectivity diagnosis") {
  SUBCASE("the corner counterexample produces equal transforms") {
    const double theta = 0.5;
    const ElasticParams p(2 * 2 * pi / theta * 0.5, 0.5);  // a/(2b) = 2 pi / theta
    ComplexArray<double> z1(3), z2(3);
    z1 << Complex(0, 0), Complex(0.5, 0), Complex(1.0, 0);
    z2 << Complex(0, 0), Complex(0.5, 0),
        Complex(0.5, 0) + 0.5 * std::polar(1.0, theta);
    const auto c1 = PlaneCurve::with_uniform_params(std::move(z1));
    const auto c2 = PlaneCurve::with_uniform_params(std::move(z2));
    const auto rep = injectivity_check(c1, c2, p);
    CHECK(rep.transforms_equal);
    CHECK_FALSE(rep.injective_regime);
    const auto q1 = forward(c1, p);
    const auto q2 = forward(c2, p);
    double worst = 0;
    for (Eigen::Index j = 0; j < q1.samples.size(); ++j)
      worst = std::max(worst, std::abs(q1.samples[j] - q2.samples[j]));
    CHECK(worst <= 1e-12);
  }

  SUBCASE("bounded-angle pairs stay apart beyond rotation") {
    Rng rng(45);
    const ElasticParams p(1.0, 1.0);  // bound = pi / rho = 2 pi -> angles < pi suffice
    for (int trial = 0; trial < 20; ++trial) {
      const auto c1 = normalize(testutil::random_bounded_curve(rng, 12, p.rho()));
      const auto c2 = normalize(testutil::random_bounded_curve(rng, 12, p.rho()));
      const auto rep = injectivity_check(c1, c2, p);
      CHECK(rep.injective_regime);
      const auto [q1, q2] = common_refinement(forward(c1, p), forward(c2, p));
      const double phi = optimal_rotation(q1, q2);
      CHECK(l2_distance(q1, rotate_transform(q2, phi)) > 1e-6);
    }
  }

  SUBCASE("rho at least one is always injective") {
    const ElasticParams p(2.0, 0.5);
    ComplexArray<double> z(3);
    z << Complex(0, 0), Complex(1, 0), Complex(1, 1);
    const auto c = PlaneCurve::with_uniform_params(std::move(z));
    CHECK(injectivity_check(c, c, p).always_injective);
    CHECK(injectivity_check(c, c, p).transforms_equal);
  }

  SUBCASE("segment count mismatch is rejected") {
    ComplexArray<double> z1(3), z2(4);
    z1 << Complex(0, 0), Complex(1, 0), Complex(2, 0.5);
    z2 << Complex(0, 0), Complex(1, 0), Complex(2, 0.5), Complex(3, 0);
    CHECK_THROWS_AS(injectivity_check(PlaneCurve::with_uniform_params(std::move(z1)),
                                      PlaneCurve::with_uniform_params(std::move(z2)),
                                      ElasticParams(1.0, 0.5)),
                    SegmentMismatch);
  }
}
