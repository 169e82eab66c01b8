#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "elastica/closed.hpp"
#include "elastica/errors.hpp"
#include "elastica/matching.hpp"
#include "elastica/transform.hpp"
#include "elastica/types.hpp"

namespace elastica {

enum class GeodesicSpace { flat, sphere, closed };

template <class Scalar>
struct GeodesicDiagnosticsT {
  Scalar min_abs_sample = std::numeric_limits<Scalar>::infinity();
  bool singular_warning = false;            ///< flat path grazes the puncture
  Scalar max_norm_drift = Scalar(0);        ///< sphere paths only
  std::vector<Scalar> projection_residuals; ///< closed paths only
  bool straightened = false;                ///< polar fallback was used
  Scalar path_energy = Scalar(0);           ///< discrete energy after straightening
};

template <class Scalar>
struct GeodesicPathT {
  std::vector<TransformedCurveT<Scalar>> points;
  Scalar distance = Scalar(0);
  GeodesicSpace space = GeodesicSpace::flat;
  GeodesicDiagnosticsT<Scalar> diagnostics;
};

using GeodesicPath = GeodesicPathT<double>;

namespace detail {

template <class Scalar>
void record_min_abs(GeodesicPathT<Scalar>& path) {
  for (const auto& q : path.points)
    path.diagnostics.min_abs_sample = std::min(path.diagnostics.min_abs_sample, q.min_abs());
  const Scalar two_b = Scalar(2) * path.points.front().elastic.b;
  path.diagnostics.singular_warning =
      path.diagnostics.min_abs_sample < Scalar(1e-6) * two_b;
}

}  // namespace detail

/// Straight-line geodesic of the flat L2 metric. A path that grazes the
/// puncture q = 0 sets a warning flag rather than failing; the ambient
/// geodesic still exists.
template <class Scalar>
GeodesicPathT<Scalar> flat_geodesic(const TransformedCurveT<Scalar>& q0,
                                    const TransformedCurveT<Scalar>& q1, int m = 7) {
  if (m < 2) throw Error("geodesic needs at least 2 points");
  auto [a, b] = common_refinement(q0, q1);
  GeodesicPathT<Scalar> path;
  path.space = GeodesicSpace::flat;
  path.distance = l2_distance(a, b);
  path.points.reserve(std::size_t(m));
  for (int s = 0; s < m; ++s) {
    const Scalar u = Scalar(s) / Scalar(m - 1);
    TransformedCurveT<Scalar> p = a;
    p.samples = (Scalar(1) - u) * a.samples + u * b.samples;
    path.points.push_back(std::move(p));
  }
  detail::record_min_abs(path);
  return path;
}

/// Great-circle geodesic on the sphere of radius 2b that carries the
/// fixed-length curves. Spherical interpolation between the endpoints;
/// distance is 2b arccos(<q0, q1> / 4b^2).
template <class Scalar>
GeodesicPathT<Scalar> sphere_geodesic(const TransformedCurveT<Scalar>& q0,
                                      const TransformedCurveT<Scalar>& q1, int m = 7) {
  if (m < 2) throw Error("geodesic needs at least 2 points");
  const Scalar radius = Scalar(2) * q0.elastic.b;
  if (std::abs(l2_norm(q0) - radius) > Scalar(1e-8) ||
      std::abs(l2_norm(q1) - radius) > Scalar(1e-8))
    throw OffSphere("inputs must lie on the sphere of radius 2b");
  auto [a, b] = common_refinement(q0, q1);
  const Scalar cosD =
      std::clamp(l2_inner(a, b) / (radius * radius), Scalar(-1), Scalar(1));
  const Scalar D = std::acos(cosD);
  if (D >= std::numbers::pi_v<Scalar> - Scalar(1e-6))
    throw Antipodal("endpoints are antipodal on the sphere");
  GeodesicPathT<Scalar> path;
  path.space = GeodesicSpace::sphere;
  path.distance = radius * D;
  path.points.reserve(std::size_t(m));
  for (int s = 0; s < m; ++s) {
    const Scalar u = Scalar(s) / Scalar(m - 1);
    TransformedCurveT<Scalar> p = a;
    if (D < Scalar(1e-12)) {
      p.samples = a.samples;
    } else {
      const Scalar wa = std::sin((Scalar(1) - u) * D) / std::sin(D);
      const Scalar wb = std::sin(u * D) / std::sin(D);
      p.samples = wa * a.samples + wb * b.samples;
    }
    const Scalar drift = std::abs(l2_norm(p) - radius);
    path.diagnostics.max_norm_drift = std::max(path.diagnostics.max_norm_drift, drift);
    if (drift > Scalar(1e-12))
      p.samples *= std::complex<Scalar>(radius / l2_norm(p), 0);
    path.points.push_back(std::move(p));
  }
  detail::record_min_abs(path);
  return path;
}

/// Geodesic between closed-curve transforms: endpoints must satisfy the
/// closure constraint; interior points of a flat (or spherical) base path are
/// pushed back onto the constraint set. The distance is the discrete length
/// of the projected path.
template <class Scalar>
GeodesicPathT<Scalar> closed_geodesic(const TransformedCurveT<Scalar>& q0,
                                      const TransformedCurveT<Scalar>& q1, int m = 7,
                                      Scalar tol = Scalar(-1), bool sphere_base = false,
                                      int max_iter = 200) {
  if (tol <= Scalar(0)) tol = default_closure_tol(q0.elastic);
  if (std::abs(closure_defect(q0)) > tol || std::abs(closure_defect(q1)) > tol)
    throw NotClosed("closed geodesic endpoints must satisfy the closure constraint");
  GeodesicPathT<Scalar> path =
      sphere_base ? sphere_geodesic(q0, q1, m) : flat_geodesic(q0, q1, m);
  path.space = GeodesicSpace::closed;
  path.diagnostics.projection_residuals.assign(std::size_t(m), Scalar(0));
  for (int s = 1; s + 1 < m; ++s) {
    ProjectionResultT<Scalar> proj = project_to_closed(path.points[std::size_t(s)], tol, max_iter);
    if (!proj.converged)
      throw NoConvergence("closure projection failed at path point " + std::to_string(s) +
                          " of " + std::to_string(m));
    path.diagnostics.projection_residuals[std::size_t(s)] = proj.defect;
    path.points[std::size_t(s)] = std::move(proj.q);
  }
  Scalar length = Scalar(0);
  for (int s = 0; s + 1 < m; ++s)
    length += l2_distance(path.points[std::size_t(s)], path.points[std::size_t(s + 1)]);
  path.distance = length;
  return path;
}

// ---------------------------------------------------------------------------
// Path straightening in polar coordinates
// ---------------------------------------------------------------------------

namespace detail {

/// Discrete path energy sum |p_{s+1} - p_s|^2 in L2.
template <class Scalar>
Scalar path_energy(const std::vector<TransformedCurveT<Scalar>>& pts) {
  Scalar e = Scalar(0);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s)
    for (Eigen::Index j = 0; j < pts[s].samples.size(); ++j)
      e += std::norm(pts[s + 1].samples[j] - pts[s].samples[j]) * pts[s].dt(j);
  return e;
}

}  // namespace detail

/// Fallback path construction for a/(2b) > 1, where the straight-line path
/// can wind through branch cuts and the inverse loses track of the argument.
/// Radii are taken from the flat geodesic, arguments start at the linear
/// interpolation of the endpoints' unwrapped arguments, and the interior
/// angles are relaxed by cyclic pointwise updates (weighted circular means)
/// until the discrete path energy stops decreasing.
template <class Scalar>
GeodesicPathT<Scalar> straighten_polar(const TransformedCurveT<Scalar>& q0,
                                       const TransformedCurveT<Scalar>& q1, int m = 7,
                                       Scalar energy_tol = Scalar(1e-8),
                                       int max_passes = 2000) {
  if (m < 3) throw Error("straightening needs at least 3 path points");
  auto [a, b] = common_refinement(q0, q1);
  const Eigen::Index k = a.samples.size();
  const RealArray<Scalar> phi0 = unwrapped_argument(a);
  const RealArray<Scalar> phi1 = unwrapped_argument(b);

  // Radii from the flat geodesic; arguments interpolated in the unwrapped chart.
  std::vector<RealArray<Scalar>> radius;
  radius.assign(std::size_t(m), RealArray<Scalar>(k));
  std::vector<RealArray<Scalar>> phi;
  phi.assign(std::size_t(m), RealArray<Scalar>(k));
  for (int s = 0; s < m; ++s) {
    const Scalar u = Scalar(s) / Scalar(m - 1);
    for (Eigen::Index j = 0; j < k; ++j) {
      radius[std::size_t(s)][j] =
          std::abs((Scalar(1) - u) * a.samples[j] + u * b.samples[j]);
      phi[std::size_t(s)][j] = (Scalar(1) - u) * phi0[j] + u * phi1[j];
    }
  }
  phi[0] = phi0;
  phi[std::size_t(m - 1)] = phi1;
  radius[0] = a.samples.abs();
  radius[std::size_t(m - 1)] = b.samples.abs();

  const auto assemble = [&](std::size_t s) {
    TransformedCurveT<Scalar> p = a;
    for (Eigen::Index j = 0; j < k; ++j)
      p.samples[j] = std::polar(radius[s][j], phi[s][j]);
    return p;
  };
  std::vector<TransformedCurveT<Scalar>> pts;
  pts.resize(std::size_t(m));
  for (int s = 0; s < m; ++s) pts[std::size_t(s)] = assemble(std::size_t(s));

  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar energy = detail::path_energy(pts);
  for (int pass = 0; pass < max_passes; ++pass) {
    for (int s = 1; s + 1 < m; ++s) {
      auto& ph = phi[std::size_t(s)];
      for (Eigen::Index j = 0; j < k; ++j) {
        const Scalar w_prev = radius[std::size_t(s - 1)][j] * radius[std::size_t(s)][j];
        const Scalar w_next = radius[std::size_t(s)][j] * radius[std::size_t(s + 1)][j];
        const std::complex<Scalar> target =
            w_prev * std::polar(Scalar(1), phi[std::size_t(s - 1)][j]) +
            w_next * std::polar(Scalar(1), phi[std::size_t(s + 1)][j]);
        if (std::abs(target) == Scalar(0)) continue;
        const Scalar mid =
            (phi[std::size_t(s - 1)][j] + phi[std::size_t(s + 1)][j]) / Scalar(2);
        const Scalar arg = std::arg(target);
        ph[j] = arg + two_pi * std::round((mid - arg) / two_pi);
      }
      pts[std::size_t(s)] = assemble(std::size_t(s));
    }
    const Scalar next_energy = detail::path_energy(pts);
    const Scalar change = energy - next_energy;
    energy = next_energy;
    if (change < energy_tol) break;
  }

  const Scalar flat_dist = l2_distance(a, b);
  const Scalar lower_bound = flat_dist * flat_dist / Scalar(m - 1);
  if (energy > Scalar(2) * lower_bound + energy_tol)
    throw StraighteningFailed("path energy stalled at " + std::to_string(double(energy)) +
                              " vs flat lower bound " + std::to_string(double(lower_bound)));

  GeodesicPathT<Scalar> path;
  path.space = GeodesicSpace::flat;
  path.points = std::move(pts);
  Scalar length = Scalar(0);
  for (int s = 0; s + 1 < m; ++s)
    length += l2_distance(path.points[std::size_t(s)], path.points[std::size_t(s + 1)]);
  path.distance = length;
  path.diagnostics.straightened = true;
  path.diagnostics.path_energy = energy;
  detail::record_min_abs(path);
  return path;
}

// ---------------------------------------------------------------------------
// Shape-space pipeline
// ---------------------------------------------------------------------------

template <class Scalar>
struct ShapeGeodesicOptionsT {
  bool closed = false;
  bool fixed_length = false;
  int steps = 7;  ///< path points
  MatchOptionsT<Scalar> match;
  Scalar closure_tol = Scalar(-1);  ///< negative: default for the metric
};

using ShapeGeodesicOptions = ShapeGeodesicOptionsT<double>;

template <class Scalar>
struct ShapeGeodesicResultT {
  GeodesicPathT<Scalar> path;
  std::vector<PlaneCurveT<Scalar>> curves;  ///< inverted path points
  MatchResultT<Scalar> match;
};

using ShapeGeodesicResult = ShapeGeodesicResultT<double>;

namespace detail {

/// The principal unwrapping of each interior point must stay within a branch
/// width of the endpoint interpolation; otherwise the inverse would jump
/// branches along the path.
template <class Scalar>
bool arguments_consistent(const GeodesicPathT<Scalar>& path) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const auto& pts = path.points;
  const Scalar floor_abs =
      Scalar(1e-9) * Scalar(2) * pts.front().elastic.b;
  for (const auto& p : pts)
    if (p.min_abs() <= floor_abs) return false;
  const RealArray<Scalar> phi0 = unwrapped_argument(pts.front());
  const RealArray<Scalar> phi1 = unwrapped_argument(pts.back());
  const int m = int(pts.size());
  for (int s = 1; s + 1 < m; ++s) {
    const Scalar u = Scalar(s) / Scalar(m - 1);
    const RealArray<Scalar> phi = unwrapped_argument(pts[std::size_t(s)]);
    const RealArray<Scalar> ref = (Scalar(1) - u) * phi0 + u * phi1;
    if (((phi - ref).abs() > pi).any()) return false;
  }
  return true;
}

}  // namespace detail

/// Full shape-space geodesic: normalize, align over rotations, seeds and
/// reparameterizations, interpolate in the matching transform space, and
/// invert every path point back to a curve.
template <class Scalar>
ShapeGeodesicResultT<Scalar> shape_geodesic(const PlaneCurveT<Scalar>& c1,
                                            const PlaneCurveT<Scalar>& c2,
                                            const ElasticParamsT<Scalar>& p,
                                            ShapeGeodesicOptionsT<Scalar> opts = {}) {
  opts.match.fixed_length = opts.fixed_length;
  ShapeGeodesicResultT<Scalar> out;
  out.match = opts.closed ? match_closed(c1, c2, p, opts.match)
                          : match_open(c1, c2, p, opts.match);
  const TransformedCurveT<Scalar>& q1 = out.match.q1;
  const TransformedCurveT<Scalar>& q2 = out.match.q2_aligned;
  const int m = opts.steps;
  Scalar tol = opts.closure_tol > Scalar(0) ? opts.closure_tol : default_closure_tol(p);

  GeodesicPathT<Scalar> base = opts.fixed_length ? sphere_geodesic(q1, q2, m)
                                                 : flat_geodesic(q1, q2, m);
  const bool needs_fallback = p.rho() > Scalar(1) && !detail::arguments_consistent(base);
  if (needs_fallback) base = straighten_polar(q1, q2, m);

  if (opts.closed) {
    GeodesicDiagnosticsT<Scalar> kept = base.diagnostics;
    base.diagnostics.projection_residuals.assign(std::size_t(m), Scalar(0));
    for (int s = 1; s + 1 < m; ++s) {
      ProjectionResultT<Scalar> proj = project_to_closed(base.points[std::size_t(s)], tol);
      if (!proj.converged)
        throw NoConvergence("closure projection failed at path point " + std::to_string(s));
      base.diagnostics.projection_residuals[std::size_t(s)] = proj.defect;
      base.points[std::size_t(s)] = std::move(proj.q);
    }
    base.diagnostics.straightened = kept.straightened;
    base.space = GeodesicSpace::closed;
    Scalar length = Scalar(0);
    for (int s = 0; s + 1 < m; ++s)
      length += l2_distance(base.points[std::size_t(s)], base.points[std::size_t(s + 1)]);
    base.distance = length;
  }

  // Invert each path point. After straightening or projection the principal
  // unwrapping may differ from the constructed branch, so anchor it to the
  // interpolated reference.
  out.curves.reserve(std::size_t(m));
  const RealArray<Scalar> phi0 = unwrapped_argument(base.points.front());
  const RealArray<Scalar> phi1 = unwrapped_argument(base.points.back());
  for (int s = 0; s < m; ++s) {
    const TransformedCurveT<Scalar>& q = base.points[std::size_t(s)];
    if (base.diagnostics.straightened || opts.closed) {
      const Scalar u = Scalar(s) / Scalar(m - 1);
      const RealArray<Scalar> ref = (Scalar(1) - u) * phi0 + u * phi1;
      out.curves.push_back(inverse_with_argument(q, unwrap_near(q.samples, ref)));
    } else {
      out.curves.push_back(inverse(q));
    }
  }
  out.path = std::move(base);
  return out;
}

/// Distance component of the shape geodesic. Fixed-length distances use the
/// sphere arc length; closed distances are discrete projected path lengths;
/// open flat distances come straight from the matching.
template <class Scalar>
Scalar shape_distance(const PlaneCurveT<Scalar>& c1, const PlaneCurveT<Scalar>& c2,
                      const ElasticParamsT<Scalar>& p,
                      ShapeGeodesicOptionsT<Scalar> opts = {}) {
  opts.match.fixed_length = opts.fixed_length;
  if (opts.closed) {
    ShapeGeodesicResultT<Scalar> g = shape_geodesic(c1, c2, p, opts);
    return g.path.distance;
  }
  const MatchResultT<Scalar> match = match_open(c1, c2, p, opts.match);
  if (!opts.fixed_length) return match.distance;
  const Scalar radius = Scalar(2) * p.b;
  const Scalar cosD = std::clamp(
      Scalar(1) - match.distance * match.distance / (Scalar(2) * radius * radius),
      Scalar(-1), Scalar(1));
  return radius * std::acos(cosD);
}

}  // namespace elastica
