#pragma once

#include <algorithm>
#include <vector>

#include "elastica/errors.hpp"
#include "elastica/types.hpp"

namespace elastica {

/// Piecewise-linear nondecreasing warp of [0, 1] fixing both endpoints.
/// Slopes may vanish, so this is the semigroup closure of the
/// orientation-preserving diffeomorphisms rather than the group itself.
template <class Scalar>
struct ReparameterizationT {
  RealArray<Scalar> breakpoints;
  RealArray<Scalar> values;

  ReparameterizationT() = default;

  ReparameterizationT(RealArray<Scalar> breakpoints_, RealArray<Scalar> values_)
      : breakpoints(std::move(breakpoints_)), values(std::move(values_)) {
    validate();
  }

  static ReparameterizationT identity() {
    RealArray<Scalar> t(2);
    t << Scalar(0), Scalar(1);
    return ReparameterizationT(t, t);
  }

  Scalar operator()(Scalar t) const {
    t = std::clamp(t, Scalar(0), Scalar(1));
    const auto* begin = breakpoints.data();
    const auto* end = begin + breakpoints.size();
    Eigen::Index j = std::upper_bound(begin, end, t) - begin;
    j = std::clamp<Eigen::Index>(j, 1, breakpoints.size() - 1);
    const Scalar w = (t - breakpoints[j - 1]) / (breakpoints[j] - breakpoints[j - 1]);
    return values[j - 1] + w * (values[j] - values[j - 1]);
  }

  void validate() const {
    if (breakpoints.size() < 2 || breakpoints.size() != values.size())
      throw Error("reparameterization: need matching breakpoints and values");
    if (breakpoints[0] != Scalar(0) || breakpoints[breakpoints.size() - 1] != Scalar(1))
      throw Error("reparameterization: breakpoints must span [0, 1]");
    if (values[0] != Scalar(0) || values[values.size() - 1] != Scalar(1))
      throw Error("reparameterization: must fix 0 and 1");
    for (Eigen::Index j = 1; j < breakpoints.size(); ++j) {
      if (!(breakpoints[j] > breakpoints[j - 1]))
        throw Error("reparameterization: breakpoints must be strictly increasing");
      if (values[j] < values[j - 1])
        throw Error("reparameterization: values must be nondecreasing");
    }
  }
};

using Reparameterization = ReparameterizationT<double>;

/// Composition g1(g2(t)), again PL nondecreasing and boundary-fixing.
/// Breakpoints are g2's breakpoints together with g2-preimages of g1's.
template <class Scalar>
ReparameterizationT<Scalar> compose(const ReparameterizationT<Scalar>& g1,
                                    const ReparameterizationT<Scalar>& g2) {
  std::vector<Scalar> t(g2.breakpoints.data(), g2.breakpoints.data() + g2.breakpoints.size());
  // Preimage of each g1 breakpoint under g2 within pieces whose value range covers it.
  for (Eigen::Index i = 0; i < g1.breakpoints.size(); ++i) {
    const Scalar beta = g1.breakpoints[i];
    for (Eigen::Index j = 1; j < g2.breakpoints.size(); ++j) {
      const Scalar y0 = g2.values[j - 1], y1 = g2.values[j];
      if (y0 < beta && beta < y1) {
        const Scalar x0 = g2.breakpoints[j - 1], x1 = g2.breakpoints[j];
        t.push_back(std::clamp(x0 + (beta - y0) / (y1 - y0) * (x1 - x0), x0, x1));
      }
    }
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  RealArray<Scalar> bp(Eigen::Index(t.size())), val(Eigen::Index(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    bp[Eigen::Index(i)] = t[i];
    val[Eigen::Index(i)] = g1(g2(t[i]));
  }
  val[0] = Scalar(0);
  val[val.size() - 1] = Scalar(1);
  for (Eigen::Index i = 1; i < val.size(); ++i) val[i] = std::max(val[i], val[i - 1]);
  return ReparameterizationT<Scalar>(std::move(bp), std::move(val));
}

}  // namespace elastica
