#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/errors.hpp"
#include "elastica/reparam.hpp"
#include "elastica/transform.hpp"
#include "elastica/types.hpp"

namespace elastica {

template <class Scalar>
struct MatchOptionsT {
  bool fixed_length = false;
  int grid_n = 128;       ///< DP grid segments; warp nodes live on this grid
  int slope_window = 4;   ///< max node jump per DP step
  int max_rounds = 10;    ///< rotation / warp alternation rounds
  Scalar round_tol = Scalar(1e-8);
  int seed_count = 0;     ///< closed curves: seeds tried; 0 means every vertex
};

using MatchOptions = MatchOptionsT<double>;

template <class Scalar>
struct MatchResultT {
  ReparameterizationT<Scalar> gamma;
  Scalar rotation = Scalar(0);  ///< angle applied in transform space
  int seed = 0;                 ///< cyclic vertex offset (closed curves)
  Scalar distance = Scalar(0);
  // Aligned representatives, kept so downstream geodesics need not replay the
  // alignment recipe.
  TransformedCurveT<Scalar> q1;
  TransformedCurveT<Scalar> q2_aligned;
};

using MatchResult = MatchResultT<double>;

// ---------------------------------------------------------------------------
// Rotation alignment
// ---------------------------------------------------------------------------

/// Closed-form optimal rotation: phi = arg of the complex pairing integral of
/// q1 conj(q2), which maximizes the real L2 inner product against exp(i phi) q2.
/// Near-degenerate pairings (any rotation optimal) return phi = 0.
template <class Scalar>
Scalar optimal_rotation(const TransformedCurveT<Scalar>& q1,
                        const TransformedCurveT<Scalar>& q2) {
  const std::complex<Scalar> z = l2_inner_complex(q1, q2);
  if (std::abs(z) < Scalar(1e-14)) return Scalar(0);
  return std::arg(z);
}

// ---------------------------------------------------------------------------
// Dynamic-programming reparameterization
// ---------------------------------------------------------------------------

namespace detail {

/// Exact squared-L2 cost of matching q1 on [ta, tb] against the constant-slope
/// warp of q2 covering [sa, sb]: the integrand is piecewise constant on the
/// merge of q1's cells with warp preimages of q2's cells.
template <class Scalar>
Scalar warp_segment_cost(const TransformedCurveT<Scalar>& q1,
                         const TransformedCurveT<Scalar>& q2, Scalar ta, Scalar tb,
                         Scalar sa, Scalar sb) {
  const Scalar sigma = (sb - sa) / (tb - ta);
  const Scalar root = std::sqrt(sigma);
  const auto locate = [](const RealArray<Scalar>& params, Scalar t) {
    const auto* begin = params.data();
    Eigen::Index idx = std::upper_bound(begin, begin + params.size(), t) - begin - 1;
    return std::clamp<Eigen::Index>(idx, 0, params.size() - 2);
  };
  Eigen::Index i = locate(q1.params, ta);
  Eigen::Index j = locate(q2.params, sa);
  Scalar cost = Scalar(0);
  Scalar t = ta;
  while (t < tb) {
    const Scalar t_q1 = (i < q1.segment_count() - 1) ? q1.params[i + 1] : tb;
    const Scalar t_q2 =
        (sigma > Scalar(0) && j < q2.segment_count() - 1)
            ? ta + (q2.params[j + 1] - sa) / sigma
            : tb;
    const Scalar next = std::min({tb, t_q1, t_q2});
    const Scalar width = next - t;
    if (width > Scalar(0))
      cost += std::norm(q1.samples[i] - root * q2.samples[j]) * width;
    if (next >= tb) break;
    if (t_q1 <= next && i < q1.segment_count() - 1) ++i;
    if (t_q2 <= next && j < q2.segment_count() - 1) ++j;
    t = next;
  }
  return cost;
}

}  // namespace detail

template <class Scalar>
struct DpResultT {
  ReparameterizationT<Scalar> gamma;
  Scalar cost = Scalar(0);  ///< squared L2 distance to the warped second curve
};

/// Minimizes |q1 - gamma * q2|_{L2} over PL warps through the uniform grid of
/// grid_n segments. A node (i, j) is reached from (i - d, j - d') for
/// 1 <= d, d' <= window, each move priced by the exact cell cost.
template <class Scalar>
DpResultT<Scalar> dp_reparameterize(const TransformedCurveT<Scalar>& q1,
                                    const TransformedCurveT<Scalar>& q2, int grid_n,
                                    int window = 4) {
  if (grid_n < 2) throw Error("DP grid needs at least 2 segments");
  const int n = grid_n;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const auto node = [n](int i, int j) { return std::size_t(i) * std::size_t(n + 1) + std::size_t(j); };
  std::vector<Scalar> best(std::size_t(n + 1) * std::size_t(n + 1), inf);
  std::vector<int> parent(best.size(), -1);
  const auto grid = [n](int i) { return Scalar(i) / Scalar(n); };
  best[node(0, 0)] = Scalar(0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      Scalar b = inf;
      int arg = -1;
      for (int di = 1; di <= std::min(window, i); ++di) {
        for (int dj = 1; dj <= std::min(window, j); ++dj) {
          const Scalar prev = best[node(i - di, j - dj)];
          if (!(prev < b)) continue;  // cell costs are nonnegative
          const Scalar c = prev + detail::warp_segment_cost(q1, q2, grid(i - di), grid(i),
                                                            grid(j - dj), grid(j));
          if (c < b) {
            b = c;
            arg = int(node(i - di, j - dj));
          }
        }
      }
      best[node(i, j)] = b;
      parent[node(i, j)] = arg;
    }
  }
  std::vector<int> path_nodes;
  for (int v = int(node(n, n)); v >= 0; v = parent[std::size_t(v)])
    path_nodes.push_back(v);
  std::reverse(path_nodes.begin(), path_nodes.end());
  RealArray<Scalar> bp(Eigen::Index(path_nodes.size())), val(Eigen::Index(path_nodes.size()));
  for (std::size_t s = 0; s < path_nodes.size(); ++s) {
    bp[Eigen::Index(s)] = grid(path_nodes[s] / (n + 1));
    val[Eigen::Index(s)] = grid(path_nodes[s] % (n + 1));
  }
  return {ReparameterizationT<Scalar>(std::move(bp), std::move(val)), best[node(n, n)]};
}

// ---------------------------------------------------------------------------
// Full matching pipelines
// ---------------------------------------------------------------------------

namespace detail {

/// Rotation / reparameterization alternation on prepared transforms.
/// Accumulates the warp and rotation so that
/// rotate(reparam(gamma, q2), phi) is the aligned representative.
///
/// The rotation step is computed in closed form for the current warp, which
/// makes the whole schedule exactly covariant under rigid rotation of either
/// input: the first rotation absorbs any input rotation and the remaining
/// iterations coincide. Like any block-coordinate descent this stops at a
/// local optimum of the joint problem.
template <class Scalar>
MatchResultT<Scalar> alternate(const TransformedCurveT<Scalar>& q1,
                               const TransformedCurveT<Scalar>& q2,
                               const MatchOptionsT<Scalar>& opts) {
  MatchResultT<Scalar> result;
  result.gamma = ReparameterizationT<Scalar>::identity();
  result.q1 = q1;
  TransformedCurveT<Scalar> cur = q2;
  Scalar dist = l2_distance(q1, cur);
  for (int round = 0; round < opts.max_rounds; ++round) {
    const Scalar phi = optimal_rotation(q1, cur);
    cur = rotate_transform(cur, phi);
    result.rotation += phi;
    const DpResultT<Scalar> dp = dp_reparameterize(q1, cur, opts.grid_n, opts.slope_window);
    cur = reparam_action(dp.gamma, cur);
    result.gamma = compose(result.gamma, dp.gamma);
    const Scalar next = std::sqrt(std::max(dp.cost, Scalar(0)));
    const Scalar improvement = dist - next;
    dist = next;
    if (improvement < opts.round_tol) break;
  }
  const Scalar phi = optimal_rotation(q1, cur);
  TransformedCurveT<Scalar> polished = rotate_transform(cur, phi);
  const Scalar polished_dist = l2_distance(q1, polished);
  if (polished_dist < dist) {
    cur = std::move(polished);
    result.rotation += phi;
    dist = polished_dist;
  }
  result.distance = dist;
  result.q2_aligned = std::move(cur);
  return result;
}

}  // namespace detail

/// Optimal alignment of open curves: normalize, transform, then alternate
/// closed-form rotation with DP reparameterization. The curves keep their
/// native breakpoints; only the warp is restricted to the DP grid, so the
/// costs stay exact and no trace is lost to resampling.
template <class Scalar>
MatchResultT<Scalar> match_open(const PlaneCurveT<Scalar>& c1, const PlaneCurveT<Scalar>& c2,
                                const ElasticParamsT<Scalar>& p,
                                const MatchOptionsT<Scalar>& opts = {}) {
  const PlaneCurveT<Scalar> a = normalize(c1, true, opts.fixed_length);
  const PlaneCurveT<Scalar> b = normalize(c2, true, opts.fixed_length);
  return detail::alternate(forward(a, p), forward(b, p), opts);
}

/// Cyclic vertex shift of a closed curve with uniform breakpoints.
template <class Scalar>
PlaneCurveT<Scalar> cyclic_shift(const PlaneCurveT<Scalar>& c, Eigen::Index seed) {
  const Eigen::Index k = c.segment_count();
  ComplexArray<Scalar> z(k + 1);
  for (Eigen::Index i = 0; i < k; ++i) z[i] = c.vertices[(i + seed) % k];
  z[k] = z[0];
  return PlaneCurveT<Scalar>::with_uniform_params(std::move(z), true);
}

/// Closed-curve matching: exhaustive (or strided) search over starting
/// vertices, re-transforming per seed so the angle unwrapping restarts there,
/// with the open-curve alternation inside.
template <class Scalar>
MatchResultT<Scalar> match_closed(const PlaneCurveT<Scalar>& c1, const PlaneCurveT<Scalar>& c2,
                                  const ElasticParamsT<Scalar>& p,
                                  const MatchOptionsT<Scalar>& opts = {}) {
  const Eigen::Index n = opts.grid_n;
  // Resample before normalizing: subsampling a polygon shortens it slightly,
  // and fixed-length mode needs the final curves at unit arclength exactly.
  const PlaneCurveT<Scalar> a =
      normalize(resample_uniform(c1, n + 1), true, opts.fixed_length);
  const PlaneCurveT<Scalar> b =
      normalize(resample_uniform(c2, n + 1), true, opts.fixed_length);
  const TransformedCurveT<Scalar> q1 = forward(a, p);
  const Eigen::Index seeds = (opts.seed_count > 0 && opts.seed_count < n)
                                 ? Eigen::Index(opts.seed_count)
                                 : n;
  MatchResultT<Scalar> best;
  best.distance = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index s = 0; s < seeds; ++s) {
    const Eigen::Index shift = s * n / seeds;
    const PlaneCurveT<Scalar> shifted = cyclic_shift(b, shift);
    MatchResultT<Scalar> trial = detail::alternate(q1, forward(shifted, p), opts);
    if (trial.distance < best.distance) {
      best = std::move(trial);
      best.seed = int(shift);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Injectivity diagnosis
// ---------------------------------------------------------------------------

/// Outcome of testing the discrete injectivity conditions on a pair of PL
/// curves: equal radius functions plus integer-multiple relations between the
/// signed turning angles, and the sufficient bounded-angle regime.
template <class Scalar>
struct InjectivityReportT {
  bool params_match = false;
  bool radii_match = false;
  Scalar max_radius_diff = Scalar(0);
  bool angle_conditions_hold = false;
  Scalar max_integer_residual = Scalar(0);
  std::vector<long> ell;            ///< integer multipliers per segment
  bool transforms_equal = false;    ///< all of the above hold
  Scalar angle_bound = Scalar(0);   ///< (2b/a) pi
  bool c1_bounded = false;
  bool c2_bounded = false;
  bool injective_regime = false;    ///< both curves under the bound
  bool always_injective = false;    ///< a/(2b) >= 1
};

using InjectivityReport = InjectivityReportT<double>;

template <class Scalar>
InjectivityReportT<Scalar> injectivity_check(const PlaneCurveT<Scalar>& c1,
                                             const PlaneCurveT<Scalar>& c2,
                                             const ElasticParamsT<Scalar>& p) {
  if (c1.segment_count() != c2.segment_count())
    throw SegmentMismatch("injectivity check needs equal segment counts");
  InjectivityReportT<Scalar> rep;
  const Eigen::Index k = c1.segment_count();
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;

  rep.params_match = ((c1.params - c2.params).abs() <= Scalar(1e-12)).all();
  const PolarDerivativeT<Scalar> p1 = polar_decompose(c1);
  const PolarDerivativeT<Scalar> p2 = polar_decompose(c2);
  rep.max_radius_diff = (p1.r - p2.r).abs().maxCoeff();
  const Scalar r_scale = std::max(p1.r.maxCoeff(), p2.r.maxCoeff());
  rep.radii_match = rep.max_radius_diff <= Scalar(1e-9) * r_scale;

  // Signed turns including the first-angle convention s_1 dtheta_1 = theta_1.
  const ComplexArray<Scalar> v1 = edge_vectors(c1);
  const ComplexArray<Scalar> v2 = edge_vectors(c2);
  rep.ell.resize(std::size_t(k));
  rep.angle_conditions_hold = true;
  const Scalar quantum = Scalar(4) * p.b / p.a * pi;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar s_dtheta_1 = (j == 0) ? p1.theta[0] : signed_turn(v1[j - 1], v1[j]);
    const Scalar s_dtheta_2 = (j == 0) ? p2.theta[0] : signed_turn(v2[j - 1], v2[j]);
    const Scalar x = (s_dtheta_1 - s_dtheta_2) / quantum;
    const long l = std::lround(x);
    rep.ell[std::size_t(j)] = l;
    const Scalar residual = std::abs(x - Scalar(l));
    rep.max_integer_residual = std::max(rep.max_integer_residual, residual);
    if (residual > Scalar(1e-9)) rep.angle_conditions_hold = false;
  }
  rep.transforms_equal = rep.params_match && rep.radii_match && rep.angle_conditions_hold;

  rep.angle_bound = Scalar(2) * p.b / p.a * pi;
  const auto bounded = [&](const PlaneCurveT<Scalar>& c) {
    const RealArray<Scalar> ang = exterior_angles(c);
    return ang.size() == 0 || ang.maxCoeff() < rep.angle_bound;
  };
  rep.c1_bounded = bounded(c1);
  rep.c2_bounded = bounded(c2);
  rep.injective_regime = rep.c1_bounded && rep.c2_bounded;
  rep.always_injective = p.rho() >= Scalar(1);
  return rep;
}

}  // namespace elastica
