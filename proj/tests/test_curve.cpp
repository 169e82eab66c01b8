#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "elastica/curve.hpp"
#include "support/test_util.hpp"

using namespace elastica;
using testutil::Rng;
using Complex = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;

PlaneCurve segment(Complex from, Complex to) {
  ComplexArray<double> z(2);
  z << from, to;
  return PlaneCurve::with_uniform_params(std::move(z), false);
}

PlaneCurve unit_square() {
  ComplexArray<double> z(5);
  z << Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1), Complex(0, 0);
  return PlaneCurve::with_uniform_params(std::move(z), true);
}

/// Curve with prescribed edge directions on uniform breakpoints.
PlaneCurve from_edges(const std::vector<Complex>& v) {
  ComplexArray<double> z(Eigen::Index(v.size()) + 1);
  z[0] = Complex(0, 0);
  const double dt = 1.0 / double(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) z[Eigen::Index(j) + 1] = z[Eigen::Index(j)] + v[j] * dt;
  return PlaneCurve::with_uniform_params(std::move(z), false);
}
}  // namespace

TEST_CASE("edge vectors of elementary curves") {
  const auto v = edge_vectors(segment({0, 0}, {1, 0}));
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0] - Complex(1, 0)) < 1e-15);

  const auto s = edge_vectors(unit_square());
  REQUIRE(s.size() == 4);
  CHECK(std::abs(s[0] - Complex(4, 0)) < 1e-14);
  CHECK(std::abs(s[1] - Complex(0, 4)) < 1e-14);
  CHECK(std::abs(s[2] - Complex(-4, 0)) < 1e-14);
  CHECK(std::abs(s[3] - Complex(0, -4)) < 1e-14);
}

TEST_CASE("secant samples of the circle are equilateral") {
  const auto c = secant_sample(generators::circle(), Eigen::Index(101));
  const auto v = edge_vectors(c);
  const double first = std::abs(v[0]);
  for (Eigen::Index j = 1; j < v.size(); ++j)
    CHECK(std::abs(v[j]) == doctest::Approx(first).epsilon(1e-12));
}

TEST_CASE("coincident vertices are rejected") {
  ComplexArray<double> z(3);
  z << Complex(0, 0), Complex(1, 0), Complex(1, 0);
  CHECK_THROWS_AS(PlaneCurve::with_uniform_params(std::move(z)), ZeroEdge);
}

TEST_CASE("polar decomposition of elementary curves") {
  SUBCASE("straight segment") {
    const auto p = polar_decompose(segment({0, 0}, {1, 0}));
    CHECK(p.r[0] == doctest::Approx(1.0));
    CHECK(p.theta[0] == doctest::Approx(0.0));
  }
  SUBCASE("quarter turn keeps the reconstruction identity") {
    const auto c = from_edges({Complex(1, 0), Complex(0, 1)});
    const auto p = polar_decompose(c);
    CHECK(p.theta[0] == doctest::Approx(0.0));
    CHECK(p.theta[1] == doctest::Approx(pi / 2));
    const auto v = edge_vectors(c);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      CHECK(std::abs(std::polar(p.r[j], p.theta[j]) - v[j]) < 1e-12);
  }
  SUBCASE("inscribed regular polygon") {
    const int n = 32;
    const auto c = secant_sample(generators::circle(), Eigen::Index(n + 1));
    const auto p = polar_decompose(c);
    CHECK(p.theta[n - 1] - p.theta[0] == doctest::Approx(2 * pi * (1.0 - 1.0 / n)).epsilon(1e-12));
    const auto ang = exterior_angles(c);
    for (Eigen::Index j = 0; j < ang.size(); ++j)
      CHECK(ang[j] == doctest::Approx(2 * pi / n).epsilon(1e-10));
  }
}

TEST_CASE("reconstruction and turning bound on random immersions") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = testutil::random_polar_spec(rng, 2 + int(rng() % 40), 3.1, 3.1);
    const auto c = testutil::curve_from_spec(spec);
    const auto p = polar_decompose(c);
    const auto v = edge_vectors(c);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      CHECK(std::abs(std::polar(p.r[j], p.theta[j]) - v[j]) < 1e-10 * p.r[j]);
      if (j > 0) CHECK(std::abs(p.theta[j] - p.theta[j - 1]) <= pi + 1e-12);
      // The generating angles themselves must be recovered (no wraps).
      CHECK(p.theta[j] == doctest::Approx(spec.theta[std::size_t(j)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("exterior angles") {
  CHECK(exterior_angles(from_edges({Complex(1, 0), Complex(1, 0)}))[0] ==
        doctest::Approx(0.0));
  CHECK(exterior_angles(from_edges({Complex(1, 0), Complex(-1, 0)}))[0] ==
        doctest::Approx(pi));
  CHECK(exterior_angles(from_edges({Complex(1, 0), Complex(1, 1)}))[0] ==
        doctest::Approx(pi / 4));
}

TEST_CASE("rotation index") {
  const auto ngon = secant_sample(generators::circle(), Eigen::Index(17));
  CHECK(rotation_index(ngon) == 1);

  PlaneCurve cw = ngon;
  cw.vertices = cw.vertices.conjugate();
  CHECK(rotation_index(cw) == -1);

  const auto doubled = secant_sample(generators::circle(2), Eigen::Index(41));
  CHECK(rotation_index(doubled) == 2);

  CHECK_THROWS_AS(rotation_index(segment({0, 0}, {1, 0})), NotClosed);
}

TEST_CASE("angle bound tracks curvature for circle samples") {
  for (int n : {16, 32, 64, 128}) {
    const auto c = secant_sample(generators::circle(), Eigen::Index(n + 1));
    CHECK(exterior_angles(c).maxCoeff() <= (2 * pi / n) * 1.05);
  }
}

TEST_CASE("normalization") {
  auto c = segment({1, 1}, {3, 1});
  const auto n = normalize(c);
  CHECK(std::abs(n.vertices[0]) == 0.0);
  CHECK(arclength(n) == doctest::Approx(1.0));

  const auto twice = normalize(n);
  for (Eigen::Index j = 0; j < n.vertices.size(); ++j)
    CHECK(std::abs(twice.vertices[j] - n.vertices[j]) < 1e-15);
}

TEST_CASE("uniform resampling") {
  SUBCASE("segment gains its midpoint") {
    const auto r = resample_uniform(segment({0, 0}, {1, 0}), 3);
    CHECK(std::abs(r.vertices[1] - Complex(0.5, 0)) < 1e-15);
  }
  SUBCASE("matching grid is the identity") {
    const auto c = secant_sample(generators::circle(), Eigen::Index(11));
    const auto r = resample_uniform(c, 11);
    for (Eigen::Index j = 0; j < c.vertices.size(); ++j)
      CHECK(std::abs(r.vertices[j] - c.vertices[j]) < 1e-15);
  }
  SUBCASE("square perimeter survives a corner-aligned resample") {
    const auto r = resample_uniform(unit_square(), 401);
    CHECK(arclength(r) == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("rotation index is resampling-invariant") {
    const auto c = secant_sample(generators::circle(), Eigen::Index(33));
    CHECK(rotation_index(resample_uniform(c, 57)) == 1);
    const auto d = secant_sample(generators::circle(2), Eigen::Index(41));
    CHECK(rotation_index(resample_uniform(d, 81)) == 2);
  }
}

TEST_CASE("secant convergence of the angle function") {
  // The circle's continuous angle is pi/2 + 2 pi t; the secant angle lags by
  // half a step, so the sup error at right breakpoints is pi / n.
  for (int n : {16, 64}) {
    const auto c = secant_sample(generators::circle(), Eigen::Index(n + 1));
    const auto p = polar_decompose(c);
    double worst = 0;
    for (Eigen::Index j = 0; j < p.theta.size(); ++j) {
      const double t = double(j + 1) / n;
      worst = std::max(worst, std::abs(p.theta[j] - (pi / 2 + 2 * pi * t)));
    }
    CHECK(worst == doctest::Approx(pi / n).epsilon(1e-6));
  }
}
