#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "elastica/matching.hpp"
#include "elastica/reparam.hpp"
#include "elastica/transform.hpp"
#include "test_util.hpp"

namespace testutil {

/// Exhaustive minimum over monotone lattice paths from (0,0) to (n,n) with
/// per-step jumps in [1, window]^2, priced by the same exact cell cost as the
/// DP solver. Independent of the DP recursion.
inline double brute_force_warp_cost(const elastica::TransformedCurve& q1,
                                    const elastica::TransformedCurve& q2, int n,
                                    int window) {
  const auto grid = [n](int i) { return double(i) / n; };
  double best = std::numeric_limits<double>::infinity();
  // depth-first over all paths
  struct Frame {
    int i, j;
    double cost;
  };
  std::vector<Frame> stack{{0, 0, 0.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.i == n && f.j == n) {
      best = std::min(best, f.cost);
      continue;
    }
    for (int di = 1; di <= std::min(window, n - f.i); ++di) {
      for (int dj = 1; dj <= std::min(window, n - f.j); ++dj) {
        const double c = elastica::detail::warp_segment_cost(
            q1, q2, grid(f.i), grid(f.i + di), grid(f.j), grid(f.j + dj));
        stack.push_back({f.i + di, f.j + dj, f.cost + c});
      }
    }
  }
  return best;
}

/// DP-feasible random warp through exact grid nodes: strictly monotone lattice
/// path with jumps in [1, window]^2, so both breakpoints and values are
/// multiples of 1/n.
inline elastica::Reparameterization random_grid_warp(Rng& rng, int n, int window = 4) {
  const auto feasible = [window](int rx, int ry) {
    if (rx == 0 || ry == 0) return rx == ry;
    return rx <= window * ry && ry <= window * rx;
  };
  std::vector<int> xs{0}, ys{0};
  std::uniform_int_distribution<int> ud(1, window);
  int x = 0, y = 0;
  while (x < n || y < n) {
    int dx, dy;
    do {
      dx = std::min(ud(rng), n - x);
      dy = std::min(ud(rng), n - y);
    } while (!feasible(n - x - dx, n - y - dy));
    x += dx;
    y += dy;
    xs.push_back(x);
    ys.push_back(y);
  }
  elastica::RealArray<double> bp(Eigen::Index(xs.size())), val(Eigen::Index(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bp[Eigen::Index(i)] = double(xs[i]) / n;
    val[Eigen::Index(i)] = double(ys[i]) / n;
  }
  return elastica::Reparameterization(std::move(bp), std::move(val));
}

/// Straightforward square-root velocity pipeline computed directly from
/// c'/sqrt(|c'|), with its own rotation alignment; shares only the DP lattice
/// solver with the library. Used to cross-check shape distances at
/// (a, b) = (1, 1/2).
inline elastica::TransformedCurve direct_srvf(const elastica::PlaneCurve& c) {
  const auto v = elastica::edge_vectors(c);
  elastica::ComplexArray<double> q(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) q[j] = v[j] / std::sqrt(std::abs(v[j]));
  return {std::move(q), c.params, elastica::ElasticParams(1.0, 0.5)};
}

/// Mirrors the library's matching schedule on directly computed square-root
/// velocity transforms.
inline double direct_srvf_distance(const elastica::PlaneCurve& c1,
                                   const elastica::PlaneCurve& c2, bool fixed_length,
                                   int grid_n, int window, int rounds) {
  using namespace elastica;
  const PlaneCurve a = normalize(c1, true, fixed_length);
  const PlaneCurve b = normalize(c2, true, fixed_length);
  const TransformedCurve q1 = direct_srvf(a);
  TransformedCurve cur = direct_srvf(b);
  double dist = l2_distance(q1, cur);
  for (int round = 0; round < rounds; ++round) {
    const std::complex<double> z = l2_inner_complex(q1, cur);
    if (std::abs(z) >= 1e-14) cur.samples *= std::polar(1.0, std::arg(z));
    const auto dp = dp_reparameterize(q1, cur, grid_n, window);
    cur = reparam_action(dp.gamma, cur);
    const double next = std::sqrt(std::max(dp.cost, 0.0));
    const double gain = dist - next;
    dist = next;
    if (gain < 1e-8) break;
  }
  {
    const std::complex<double> z = l2_inner_complex(q1, cur);
    if (std::abs(z) >= 1e-14)
      dist = std::min(dist, l2_distance(q1, rotate_transform(cur, std::arg(z))));
  }
  if (!fixed_length) return dist;
  const double cosD = std::clamp(1.0 - dist * dist / 2.0, -1.0, 1.0);
  return std::acos(cosD);
}

}  // namespace testutil
