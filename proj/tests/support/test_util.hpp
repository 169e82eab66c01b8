#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/transform.hpp"
#include "elastica/types.hpp"

namespace testutil {

using elastica::ComplexArray;
using elastica::PlaneCurve;
using elastica::RealArray;

using Rng = std::mt19937_64;

/// Random PL immersion built from its own polar data: first direction within
/// theta1_bound of zero, turning angles below angle_bound, log-uniform edge
/// speeds, mildly nonuniform breakpoints. Because the construction inverts the
/// polar decomposition, the generated (r, theta) sequences double as expected
/// values for it.
struct PolarSpec {
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> params;
};

inline PolarSpec random_polar_spec(Rng& rng, int segments, double angle_bound,
                                   double theta1_bound) {
  std::uniform_real_distribution<double> uang(0.05 * angle_bound, angle_bound);
  std::uniform_real_distribution<double> utheta(-theta1_bound, theta1_bound);
  std::uniform_real_distribution<double> usign(0.0, 1.0);
  std::uniform_real_distribution<double> ulogr(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> udt(0.5, 1.5);
  PolarSpec spec;
  spec.theta.resize(std::size_t(segments));
  spec.r.resize(std::size_t(segments));
  spec.params.resize(std::size_t(segments) + 1);
  spec.theta[0] = utheta(rng);
  for (int j = 1; j < segments; ++j) {
    const double sign = usign(rng) < 0.5 ? -1.0 : 1.0;
    spec.theta[std::size_t(j)] = spec.theta[std::size_t(j - 1)] + sign * uang(rng);
  }
  for (int j = 0; j < segments; ++j) spec.r[std::size_t(j)] = std::exp(ulogr(rng));
  spec.params[0] = 0.0;
  for (int j = 0; j < segments; ++j)
    spec.params[std::size_t(j) + 1] = spec.params[std::size_t(j)] + udt(rng);
  const double total = spec.params.back();
  for (auto& t : spec.params) t /= total;
  spec.params.back() = 1.0;
  return spec;
}

inline PlaneCurve curve_from_spec(const PolarSpec& spec) {
  const int k = int(spec.r.size());
  ComplexArray<double> z(k + 1);
  RealArray<double> t(k + 1);
  z[0] = {0.0, 0.0};
  for (int j = 0; j < k; ++j) {
    const double dt = spec.params[std::size_t(j) + 1] - spec.params[std::size_t(j)];
    z[j + 1] = z[j] + std::polar(spec.r[std::size_t(j)], spec.theta[std::size_t(j)]) * dt;
  }
  for (int j = 0; j <= k; ++j) t[j] = spec.params[std::size_t(j)];
  return PlaneCurve(std::move(z), std::move(t), false);
}

/// Random open PL immersion with all turning angles (and the initial
/// direction) strictly below angle_bound.
inline PlaneCurve random_curve(Rng& rng, int segments, double angle_bound,
                               double theta1_bound = -1.0) {
  if (theta1_bound < 0) theta1_bound = angle_bound;
  return curve_from_spec(random_polar_spec(rng, segments, angle_bound, theta1_bound));
}

/// Corpus generator used by the acceptance criteria: angles stay below both
/// pi * min(rho, 1/rho) and pi, with a safety factor.
inline PlaneCurve random_bounded_curve(Rng& rng, int segments, double rho,
                                       double safety = 0.95) {
  const double pi = std::numbers::pi;
  const double bound = safety * pi * std::min({rho, 1.0 / rho, 1.0});
  return random_curve(rng, segments, bound, bound);
}

/// Random PL variation given by vertex displacements of order one.
inline ComplexArray<double> random_variation(Rng& rng, Eigen::Index vertex_count) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexArray<double> h(vertex_count);
  for (Eigen::Index i = 0; i < vertex_count; ++i) h[i] = std::complex<double>(g(rng), g(rng));
  return h;
}

/// Smooth open test curve: low-frequency height profile with a gentle global
/// bend, sampled on n uniform breakpoints. Representative of digitized
/// outlines (small per-segment turning), unlike the jagged random_curve.
inline PlaneCurve smooth_open_curve(Rng& rng, int n, double bend_amp = 0.8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a1 = u(rng), a2 = u(rng), a3 = 0.5 * u(rng), bend = bend_amp * u(rng);
  const double pi = std::numbers::pi;
  ComplexArray<double> z(n);
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / (n - 1);
    const double y = 0.4 * a1 * std::sin(pi * t) + 0.25 * a2 * std::sin(2 * pi * t) +
                     0.15 * a3 * std::sin(3 * pi * t);
    z[i] = std::complex<double>(t, y) * std::polar(1.0, bend * t);
  }
  return PlaneCurve::with_uniform_params(std::move(z));
}

/// Strictly increasing random PL warp on a uniform grid of n segments.
inline elastica::Reparameterization random_warp(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.2, 1.8);
  RealArray<double> bp(n + 1), val(n + 1);
  val[0] = 0.0;
  for (int i = 0; i < n; ++i) val[i + 1] = val[i] + u(rng);
  for (int i = 0; i <= n; ++i) {
    bp[i] = double(i) / n;
    val[i] /= val[n];
  }
  val[n] = 1.0;
  return elastica::Reparameterization(std::move(bp), std::move(val));
}

}  // namespace testutil
