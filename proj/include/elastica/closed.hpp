#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "elastica/errors.hpp"
#include "elastica/transform.hpp"
#include "elastica/types.hpp"

namespace elastica {

/// Closure defect f(q): the endpoint of the inverse-transformed curve based
/// at the origin. Zero exactly when the reconstructed curve closes.
template <class Scalar>
std::complex<Scalar> closure_defect(const TransformedCurveT<Scalar>& q) {
  const RealArray<Scalar> phi = unwrapped_argument(q);
  const Scalar inv4b2 = Scalar(1) / (Scalar(4) * q.elastic.b * q.elastic.b);
  const Scalar two_b_over_a = Scalar(2) * q.elastic.b / q.elastic.a;
  std::complex<Scalar> f(0, 0);
  for (Eigen::Index j = 0; j < q.samples.size(); ++j)
    f += inv4b2 * std::norm(q.samples[j]) *
         std::polar(Scalar(1), two_b_over_a * phi[j]) * q.dt(j);
  return f;
}

/// L2 gradient fields of Re f and Im f at q:
///   grad Re f = 1/(2b^2) (Re w - i (b/a) Im w) q,
///   grad Im f = 1/(2b^2) (Im w + i (b/a) Re w) q,
/// where w = (q/|q|)^(2b/a) uses the same unwrapped argument as the inverse.
template <class Scalar>
std::pair<ComplexArray<Scalar>, ComplexArray<Scalar>> closure_gradients(
    const TransformedCurveT<Scalar>& q) {
  const RealArray<Scalar> phi = unwrapped_argument(q);
  const Scalar inv2b2 = Scalar(1) / (Scalar(2) * q.elastic.b * q.elastic.b);
  const Scalar b_over_a = q.elastic.b / q.elastic.a;
  const Scalar two_b_over_a = Scalar(2) * b_over_a;
  ComplexArray<Scalar> grad_re(q.samples.size()), grad_im(q.samples.size());
  for (Eigen::Index j = 0; j < q.samples.size(); ++j) {
    const std::complex<Scalar> w = std::polar(Scalar(1), two_b_over_a * phi[j]);
    grad_re[j] = inv2b2 * std::complex<Scalar>(w.real(), -b_over_a * w.imag()) * q.samples[j];
    grad_im[j] = inv2b2 * std::complex<Scalar>(w.imag(), b_over_a * w.real()) * q.samples[j];
  }
  return {std::move(grad_re), std::move(grad_im)};
}

template <class Scalar>
Scalar default_closure_tol(const ElasticParamsT<Scalar>& p) {
  return Scalar(1e-6) * (Scalar(2) * p.b) * (Scalar(2) * p.b);
}

template <class Scalar>
struct ProjectionResultT {
  TransformedCurveT<Scalar> q;
  Scalar defect = Scalar(0);
  int iterations = 0;
  bool converged = false;
};

using ProjectionResult = ProjectionResultT<double>;

namespace detail {

template <class Scalar>
Scalar field_inner(const ComplexArray<Scalar>& u, const ComplexArray<Scalar>& v,
                   const RealArray<Scalar>& params) {
  Scalar acc = Scalar(0);
  for (Eigen::Index j = 0; j < u.size(); ++j)
    acc += (u[j] * std::conj(v[j])).real() * (params[j + 1] - params[j]);
  return acc;
}

}  // namespace detail

/// Projects q onto the closure submanifold f = 0 by a damped Newton scheme on
/// the two-dimensional constraint: solve the 2x2 Gram system of the gradient
/// fields for the correction coefficients, halve the step while |f| fails to
/// decrease. Returns the best iterate; converged is false after max_iter.
template <class Scalar>
ProjectionResultT<Scalar> project_to_closed(const TransformedCurveT<Scalar>& q0, Scalar tol,
                                            int max_iter = 200) {
  ProjectionResultT<Scalar> result{q0, std::abs(closure_defect(q0)), 0, false};
  if (result.defect <= tol) {
    result.converged = true;
    return result;
  }
  TransformedCurveT<Scalar> q = q0;
  const Scalar floor_abs = Scalar(1e-12) * Scalar(2) * q.elastic.b;
  std::complex<Scalar> f = closure_defect(q);
  for (int iter = 1; iter <= max_iter; ++iter) {
    const auto [grad_re, grad_im] = closure_gradients(q);
    Eigen::Matrix<Scalar, 2, 2> gram;
    gram(0, 0) = detail::field_inner(grad_re, grad_re, q.params);
    gram(0, 1) = detail::field_inner(grad_re, grad_im, q.params);
    gram(1, 0) = gram(0, 1);
    gram(1, 1) = detail::field_inner(grad_im, grad_im, q.params);
    const Scalar tr = gram.trace(), det = gram.determinant();
    const Scalar disc = std::sqrt(std::max(tr * tr - Scalar(4) * det, Scalar(0)));
    const Scalar lo = (tr - disc) / Scalar(2), hi = (tr + disc) / Scalar(2);
    if (!(lo > Scalar(0)) || hi / lo > Scalar(1e12))
      throw SingularJacobian("closure gradient Gram matrix is rank-deficient");
    Eigen::Matrix<Scalar, 2, 1> rhs;
    rhs << -f.real(), -f.imag();
    const Eigen::Matrix<Scalar, 2, 1> delta = gram.ldlt().solve(rhs);

    Scalar step = Scalar(1);
    bool accepted = false;
    while (step >= std::ldexp(Scalar(1), -30)) {
      TransformedCurveT<Scalar> trial = q;
      for (Eigen::Index j = 0; j < trial.samples.size(); ++j)
        trial.samples[j] += step * (delta[0] * grad_re[j] + delta[1] * grad_im[j]);
      if (trial.min_abs() > floor_abs) {
        const std::complex<Scalar> f_trial = closure_defect(trial);
        if (std::abs(f_trial) < std::abs(f)) {
          q = std::move(trial);
          f = f_trial;
          accepted = true;
          break;
        }
      }
      step /= Scalar(2);
    }
    result.iterations = iter;
    if (!accepted) break;  // stalled
    if (std::abs(f) <= tol) {
      result.q = q;
      result.defect = std::abs(f);
      result.converged = true;
      return result;
    }
  }
  if (std::abs(f) < result.defect) {
    result.q = q;
    result.defect = std::abs(f);
  }
  return result;
}

template <class Scalar>
ProjectionResultT<Scalar> project_to_closed(const TransformedCurveT<Scalar>& q0) {
  return project_to_closed(q0, default_closure_tol(q0.elastic));
}

/// C0-level membership in V(ell): the periodic continuation of q across the
/// seam must pick up the factor exp(i (a/b) pi ell). For piecewise-constant
/// data the continuation re-enters the first segment after the closing turn
/// of the underlying curve, which is the principal value of the inverse
/// exponent applied to the argument gap. Raw last-against-first comparison
/// would be blind to the total turning, so the angle relation is checked on
/// the continued (unwrapped) argument.
template <class Scalar>
bool check_membership_V(const TransformedCurveT<Scalar>& q, long ell,
                        Scalar rel_tol = Scalar(1e-9)) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const RealArray<Scalar> phi = unwrapped_argument(q);
  const Eigen::Index k = q.samples.size();
  const Scalar closing_turn = std::remainder(
      Scalar(2) * q.elastic.b / q.elastic.a * (phi[0] - phi[k - 1]), two_pi);
  const Scalar continued = phi[k - 1] + q.elastic.rho() * closing_turn;
  const Scalar expected =
      phi[0] + q.elastic.a / q.elastic.b * std::numbers::pi_v<Scalar> * Scalar(ell);
  return std::abs(std::polar(Scalar(1), continued - expected) -
                  std::complex<Scalar>(1, 0)) <= rel_tol;
}

}  // namespace elastica
