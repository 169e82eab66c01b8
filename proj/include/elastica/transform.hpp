#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/errors.hpp"
#include "elastica/reparam.hpp"
#include "elastica/types.hpp"

namespace elastica {

/// Image of a curve in transform space: one complex sample per segment,
/// piecewise constant on the shared breakpoints.
template <class Scalar>
struct TransformedCurveT {
  ComplexArray<Scalar> samples;
  RealArray<Scalar> params;
  ElasticParamsT<Scalar> elastic;

  Eigen::Index segment_count() const { return samples.size(); }

  Scalar dt(Eigen::Index j) const { return params[j + 1] - params[j]; }

  Scalar min_abs() const {
    Scalar m = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index j = 0; j < samples.size(); ++j)
      m = std::min(m, std::abs(samples[j]));
    return m;
  }
};

using TransformedCurve = TransformedCurveT<double>;

// ---------------------------------------------------------------------------
// L2 geometry of piecewise-constant complex functions
// ---------------------------------------------------------------------------

/// Walk the common refinement of two breakpoint sequences, invoking
/// fn(i, j, width) for every cell where the first function uses segment i and
/// the second segment j.
template <class Scalar, class Fn>
void for_each_common_cell(const RealArray<Scalar>& p1, const RealArray<Scalar>& p2, Fn&& fn) {
  Eigen::Index i = 0, j = 0;
  Scalar t = Scalar(0);
  while (i < p1.size() - 1 && j < p2.size() - 1) {
    const Scalar next = std::min(p1[i + 1], p2[j + 1]);
    if (next > t) fn(i, j, next - t);
    t = next;
    if (p1[i + 1] <= t) ++i;
    if (p2[j + 1] <= t) ++j;
  }
}

/// Complex L2 pairing integral of q1 * conj(q2); partitions may differ.
template <class Scalar>
std::complex<Scalar> l2_inner_complex(const TransformedCurveT<Scalar>& q1,
                                      const TransformedCurveT<Scalar>& q2) {
  std::complex<Scalar> acc(0, 0);
  for_each_common_cell<Scalar>(q1.params, q2.params,
                               [&](Eigen::Index i, Eigen::Index j, Scalar w) {
                                 acc += q1.samples[i] * std::conj(q2.samples[j]) * w;
                               });
  return acc;
}

/// Real L2 inner product (the flat metric pairing).
template <class Scalar>
Scalar l2_inner(const TransformedCurveT<Scalar>& q1, const TransformedCurveT<Scalar>& q2) {
  return l2_inner_complex(q1, q2).real();
}

template <class Scalar>
Scalar l2_norm(const TransformedCurveT<Scalar>& q) {
  Scalar acc = Scalar(0);
  for (Eigen::Index j = 0; j < q.samples.size(); ++j)
    acc += std::norm(q.samples[j]) * q.dt(j);
  return std::sqrt(acc);
}

template <class Scalar>
Scalar l2_distance(const TransformedCurveT<Scalar>& q1, const TransformedCurveT<Scalar>& q2) {
  Scalar acc = Scalar(0);
  for_each_common_cell<Scalar>(q1.params, q2.params,
                               [&](Eigen::Index i, Eigen::Index j, Scalar w) {
                                 acc += std::norm(q1.samples[i] - q2.samples[j]) * w;
                               });
  return std::sqrt(acc);
}

/// Re-express both functions on the union of their breakpoints.
template <class Scalar>
std::pair<TransformedCurveT<Scalar>, TransformedCurveT<Scalar>> common_refinement(
    const TransformedCurveT<Scalar>& q1, const TransformedCurveT<Scalar>& q2) {
  std::vector<Scalar> merged;
  merged.reserve(std::size_t(q1.params.size() + q2.params.size()));
  std::merge(q1.params.data(), q1.params.data() + q1.params.size(), q2.params.data(),
             q2.params.data() + q2.params.size(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  const Eigen::Index m = Eigen::Index(merged.size());
  RealArray<Scalar> params(m);
  std::copy(merged.begin(), merged.end(), params.data());
  TransformedCurveT<Scalar> r1{ComplexArray<Scalar>(m - 1), params, q1.elastic};
  TransformedCurveT<Scalar> r2{ComplexArray<Scalar>(m - 1), params, q2.elastic};
  Eigen::Index i = 0, j = 0;
  for (Eigen::Index cell = 0; cell + 1 < m; ++cell) {
    const Scalar mid = (params[cell] + params[cell + 1]) / Scalar(2);
    while (i + 1 < q1.params.size() - 1 && q1.params[i + 1] <= mid) ++i;
    while (j + 1 < q2.params.size() - 1 && q2.params[j + 1] <= mid) ++j;
    r1.samples[cell] = q1.samples[i];
    r2.samples[cell] = q2.samples[j];
  }
  return {std::move(r1), std::move(r2)};
}

// ---------------------------------------------------------------------------
// The simplifying transform and its inverse
// ---------------------------------------------------------------------------

/// Forward transform q_j = 2b sqrt(r_j) exp(i rho theta_j) on the canonical
/// branch fixed by theta_1 in (-pi, pi].
template <class Scalar>
TransformedCurveT<Scalar> forward(const PlaneCurveT<Scalar>& c,
                                  const ElasticParamsT<Scalar>& p) {
  const PolarDerivativeT<Scalar> polar = polar_decompose(c);
  const Scalar rho = p.rho();
  ComplexArray<Scalar> q(polar.r.size());
  for (Eigen::Index j = 0; j < q.size(); ++j)
    q[j] = Scalar(2) * p.b * std::sqrt(polar.r[j]) *
           std::polar(Scalar(1), rho * polar.theta[j]);
  return {std::move(q), c.params, p};
}

/// Continuous argument of the samples: starts at the principal value and
/// takes each segment-to-segment increment in (-pi, pi].
template <class Scalar>
RealArray<Scalar> unwrapped_argument(const TransformedCurveT<Scalar>& q) {
  RealArray<Scalar> phi(q.samples.size());
  for (Eigen::Index j = 0; j < q.samples.size(); ++j)
    if (std::abs(q.samples[j]) == Scalar(0)) throw ZeroSample(std::size_t(j));
  phi[0] = std::arg(q.samples[0]);
  for (Eigen::Index j = 1; j < q.samples.size(); ++j)
    phi[j] = phi[j - 1] + std::arg(q.samples[j] * std::conj(q.samples[j - 1]));
  return phi;
}

/// Argument field chosen branchwise nearest to a reference field.
template <class Scalar>
RealArray<Scalar> unwrap_near(const ComplexArray<Scalar>& samples,
                              const RealArray<Scalar>& reference) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  RealArray<Scalar> phi(samples.size());
  for (Eigen::Index j = 0; j < samples.size(); ++j) {
    const Scalar a = std::arg(samples[j]);
    phi[j] = a + two_pi * std::round((reference[j] - a) / two_pi);
  }
  return phi;
}

/// Inverse transform with a caller-supplied argument field (the modulus is
/// taken from the samples). Used where the principal unwrapping is not the
/// wanted branch. Cells so narrow that their displacement is absorbed by the
/// running sum (sub-ulp slivers left over from warp refinements) are merged
/// into their successor instead of producing zero-length edges.
template <class Scalar>
PlaneCurveT<Scalar> inverse_with_argument(const TransformedCurveT<Scalar>& q,
                                          const RealArray<Scalar>& phi) {
  const Scalar inv4b2 = Scalar(1) / (Scalar(4) * q.elastic.b * q.elastic.b);
  const Scalar two_b_over_a = Scalar(2) * q.elastic.b / q.elastic.a;
  std::vector<std::complex<Scalar>> z{std::complex<Scalar>(0, 0)};
  std::vector<Scalar> t{q.params[0]};
  z.reserve(std::size_t(q.samples.size()) + 1);
  t.reserve(std::size_t(q.samples.size()) + 1);
  for (Eigen::Index j = 0; j < q.samples.size(); ++j) {
    const std::complex<Scalar> step =
        inv4b2 * std::norm(q.samples[j]) * std::polar(Scalar(1), two_b_over_a * phi[j]);
    const std::complex<Scalar> next = z.back() + step * q.dt(j);
    if (next == z.back()) {
      if (z.size() > 1) t.back() = q.params[j + 1];
      continue;
    }
    z.push_back(next);
    t.push_back(q.params[j + 1]);
  }
  ComplexArray<Scalar> vertices(Eigen::Index(z.size()));
  RealArray<Scalar> params(Eigen::Index(t.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    vertices[Eigen::Index(i)] = z[i];
    params[Eigen::Index(i)] = t[i];
  }
  return PlaneCurveT<Scalar>(std::move(vertices), std::move(params), false);
}

/// Inverse transform based at the origin, using the principal unwrapping of
/// the argument. Recovers the source curve up to translation whenever all
/// turning angles stay below the injectivity bound (2b/a) pi.
template <class Scalar>
PlaneCurveT<Scalar> inverse(const TransformedCurveT<Scalar>& q) {
  return inverse_with_argument(q, unwrapped_argument(q));
}

// ---------------------------------------------------------------------------
// Group actions
// ---------------------------------------------------------------------------

template <class Scalar>
PlaneCurveT<Scalar> rotate_curve(const PlaneCurveT<Scalar>& c, Scalar psi) {
  PlaneCurveT<Scalar> out = c;
  const std::complex<Scalar> u = std::polar(Scalar(1), psi);
  out.vertices *= u;
  return out;
}

template <class Scalar>
TransformedCurveT<Scalar> rotate_transform(const TransformedCurveT<Scalar>& q, Scalar phi) {
  TransformedCurveT<Scalar> out = q;
  const std::complex<Scalar> u = std::polar(Scalar(1), phi);
  out.samples *= u;
  return out;
}

template <class Scalar>
PlaneCurveT<Scalar> scale_curve(const PlaneCurveT<Scalar>& c, Scalar lambda) {
  PlaneCurveT<Scalar> out = c;
  out.vertices *= std::complex<Scalar>(lambda, 0);
  return out;
}

/// Verifies the scaling identity F(lambda c) = sqrt(lambda) F(c).
template <class Scalar>
bool scale_equivariance_check(const PlaneCurveT<Scalar>& c, Scalar lambda,
                              const ElasticParamsT<Scalar>& p) {
  const TransformedCurveT<Scalar> lhs = forward(scale_curve(c, lambda), p);
  TransformedCurveT<Scalar> rhs = forward(c, p);
  rhs.samples *= std::complex<Scalar>(std::sqrt(lambda), 0);
  Scalar worst = Scalar(0), scale = Scalar(0);
  for (Eigen::Index j = 0; j < lhs.samples.size(); ++j) {
    worst = std::max(worst, std::abs(lhs.samples[j] - rhs.samples[j]));
    scale = std::max(scale, std::abs(rhs.samples[j]));
  }
  return worst <= Scalar(1e-12) * std::max(Scalar(1), scale);
}

/// Semigroup action gamma * q = sqrt(gamma') (q o gamma), exact on the union
/// of gamma's breakpoints with the gamma-preimages of q's breakpoints.
/// Zero-slope pieces map to zero samples.
template <class Scalar>
TransformedCurveT<Scalar> reparam_action(const ReparameterizationT<Scalar>& gamma,
                                         const TransformedCurveT<Scalar>& q) {
  std::vector<Scalar> bps{Scalar(0)};
  std::vector<std::complex<Scalar>> vals;
  const auto emit = [&](Scalar x, std::complex<Scalar> value) {
    if (x > bps.back()) {
      bps.push_back(x);
      vals.push_back(value);
    }
  };
  for (Eigen::Index piece = 1; piece < gamma.breakpoints.size(); ++piece) {
    const Scalar x0 = gamma.breakpoints[piece - 1], x1 = gamma.breakpoints[piece];
    const Scalar y0 = gamma.values[piece - 1], y1 = gamma.values[piece];
    const Scalar sigma = (y1 - y0) / (x1 - x0);
    if (sigma == Scalar(0)) {
      emit(x1, std::complex<Scalar>(0, 0));
      continue;
    }
    const Scalar root = std::sqrt(sigma);
    Eigen::Index s = 0;
    while (s < q.segment_count() - 1 && q.params[s + 1] <= y0) ++s;
    while (true) {
      const Scalar yend = std::min(y1, q.params[s + 1]);
      const bool last = yend >= y1 || s == q.segment_count() - 1;
      const Scalar x =
          last ? x1 : std::clamp(x0 + (yend - y0) / sigma, x0, x1);
      emit(x, root * q.samples[s]);
      if (last) break;
      ++s;
    }
  }
  const Eigen::Index m = Eigen::Index(vals.size());
  TransformedCurveT<Scalar> out{ComplexArray<Scalar>(m), RealArray<Scalar>(m + 1), q.elastic};
  for (Eigen::Index j = 0; j < m; ++j) out.samples[j] = vals[std::size_t(j)];
  for (Eigen::Index j = 0; j <= m; ++j) out.params[j] = bps[std::size_t(j)];
  return out;
}

/// Reparameterized curve c o gamma (PL composition, exact breakpoints).
template <class Scalar>
PlaneCurveT<Scalar> compose_curve(const PlaneCurveT<Scalar>& c,
                                  const ReparameterizationT<Scalar>& gamma) {
  std::vector<Scalar> t(gamma.breakpoints.data(),
                        gamma.breakpoints.data() + gamma.breakpoints.size());
  for (Eigen::Index s = 1; s + 1 < c.params.size(); ++s) {
    const Scalar beta = c.params[s];
    for (Eigen::Index piece = 1; piece < gamma.breakpoints.size(); ++piece) {
      const Scalar y0 = gamma.values[piece - 1], y1 = gamma.values[piece];
      if (y0 < beta && beta < y1) {
        const Scalar x0 = gamma.breakpoints[piece - 1], x1 = gamma.breakpoints[piece];
        // Same expression as reparam_action so the partitions align bitwise.
        const Scalar sigma = (y1 - y0) / (x1 - x0);
        t.push_back(std::clamp(x0 + (beta - y0) / sigma, x0, x1));
      }
    }
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  ComplexArray<Scalar> z(Eigen::Index(t.size()));
  RealArray<Scalar> params(Eigen::Index(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    params[Eigen::Index(i)] = t[i];
    z[Eigen::Index(i)] = evaluate(c, gamma(t[i]));
  }
  return PlaneCurveT<Scalar>(std::move(z), std::move(params), c.closed);
}

// ---------------------------------------------------------------------------
// Pullback metric
// ---------------------------------------------------------------------------

/// Elastic inner product of two PL variations h, k (given by vertex values on
/// c's breakpoints), evaluated in the complex form
///   integral |c'|^-3 (a^2 Im(c' conj(h')) Im(c' conj(k'))
///                     + b^2 Re(c' conj(h')) Re(c' conj(k'))) dt.
template <class Scalar>
Scalar pullback_metric_eval(const PlaneCurveT<Scalar>& c, const ComplexArray<Scalar>& h,
                            const ComplexArray<Scalar>& k, const ElasticParamsT<Scalar>& p) {
  if (h.size() != c.vertices.size() || k.size() != c.vertices.size())
    throw Error("variations must share the curve's breakpoints");
  const ComplexArray<Scalar> v = edge_vectors(c);
  Scalar acc = Scalar(0);
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const Scalar dt = c.params[j + 1] - c.params[j];
    const std::complex<Scalar> hp = (h[j + 1] - h[j]) / dt;
    const std::complex<Scalar> kp = (k[j + 1] - k[j]) / dt;
    const std::complex<Scalar> vh = v[j] * std::conj(hp);
    const std::complex<Scalar> vk = v[j] * std::conj(kp);
    const Scalar w = std::pow(std::abs(v[j]), Scalar(-3));
    acc += w * (p.a * p.a * vh.imag() * vk.imag() + p.b * p.b * vh.real() * vk.real()) * dt;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Cone picture (2b >= a) and branch structure
// ---------------------------------------------------------------------------

template <class Scalar>
struct ConeCurveT {
  Eigen::Array<Scalar, Eigen::Dynamic, 3> points;
  RealArray<Scalar> params;
};

/// Pointwise local isometry onto the flat cone (4b^2 - a^2)(x^2 + y^2) = a^2 z^2,
/// z > 0, using the same unwrapped argument as the inverse transform.
template <class Scalar>
ConeCurveT<Scalar> cone_projection(const TransformedCurveT<Scalar>& q) {
  const Scalar a = q.elastic.a, b = q.elastic.b;
  if (Scalar(2) * b < a) throw ParamRegime("cone projection requires 2b >= a");
  const RealArray<Scalar> phi = unwrapped_argument(q);
  ConeCurveT<Scalar> out;
  out.points.resize(q.samples.size(), 3);
  out.params = q.params;
  const Scalar ratio = a / (Scalar(2) * b);
  const Scalar inv_ratio = Scalar(1) / ratio;
  const Scalar zc = std::sqrt(Scalar(4) * b * b - a * a) / (Scalar(2) * b);
  for (Eigen::Index j = 0; j < q.samples.size(); ++j) {
    const Scalar r = std::abs(q.samples[j]);
    out.points(j, 0) = ratio * r * std::cos(inv_ratio * phi[j]);
    out.points(j, 1) = ratio * r * std::sin(inv_ratio * phi[j]);
    out.points(j, 2) = zc * r;
  }
  return out;
}

/// The full image set of the multivalued transform: canonical branch times
/// powers of the branch multiplier exp(i (a/b) pi).
template <class Scalar>
struct BranchSetT {
  TransformedCurveT<Scalar> canonical;
  std::complex<Scalar> multiplier;
  std::size_t count = 0;  ///< distinct images when finite
  bool unbounded = false;
};

using BranchSet = BranchSetT<double>;

template <class Scalar>
BranchSetT<Scalar> branch_images(const TransformedCurveT<Scalar>& q,
                                 std::size_t enumeration_limit = 1024) {
  BranchSetT<Scalar> set;
  set.canonical = q;
  const Scalar step = q.elastic.a / q.elastic.b * std::numbers::pi_v<Scalar>;
  set.multiplier = std::polar(Scalar(1), step);
  std::complex<Scalar> acc(1, 0);
  for (std::size_t k = 1; k <= enumeration_limit; ++k) {
    acc *= set.multiplier;
    if (std::abs(acc - std::complex<Scalar>(1, 0)) < Scalar(1e-9)) {
      set.count = k;
      return set;
    }
  }
  set.unbounded = true;
  return set;
}

}  // namespace elastica
