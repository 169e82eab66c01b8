#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "elastica/errors.hpp"
#include "elastica/types.hpp"

namespace elastica {

/// Piecewise-linear immersed plane curve. Vertices are points of the complex
/// plane; params are the breakpoints 0 = t_0 < t_1 < ... < t_k = 1 of the
/// parameter interval. On (t_{j-1}, t_j) the derivative is the constant edge
/// vector v_j = (z_j - z_{j-1}) / (t_j - t_{j-1}).
template <class Scalar>
struct PlaneCurveT {
  ComplexArray<Scalar> vertices;
  RealArray<Scalar> params;
  bool closed = false;

  PlaneCurveT() = default;

  PlaneCurveT(ComplexArray<Scalar> vertices_, RealArray<Scalar> params_,
              bool closed_ = false)
      : vertices(std::move(vertices_)), params(std::move(params_)), closed(closed_) {
    validate();
  }

  /// Curve with uniformly spaced breakpoints.
  static PlaneCurveT with_uniform_params(ComplexArray<Scalar> vertices_,
                                         bool closed_ = false) {
    const Eigen::Index n = vertices_.size();
    RealArray<Scalar> t(n);
    for (Eigen::Index i = 0; i < n; ++i) t[i] = Scalar(i) / Scalar(n - 1);
    return PlaneCurveT(std::move(vertices_), std::move(t), closed_);
  }

  Eigen::Index segment_count() const { return vertices.size() - 1; }

  void validate() const {
    if (vertices.size() < 2)
      throw Error("curve needs at least 2 vertices");
    if (params.size() != vertices.size())
      throw Error("params and vertices must have equal length");
    if (params[0] != Scalar(0) || params[params.size() - 1] != Scalar(1))
      throw Error("params must start at 0 and end at 1");
    for (Eigen::Index j = 1; j < params.size(); ++j) {
      if (!(params[j] > params[j - 1]))
        throw Error("params must be strictly increasing");
      if (vertices[j] == vertices[j - 1]) throw ZeroEdge(std::size_t(j));
    }
    if (closed) {
      const Scalar gap = std::abs(vertices[vertices.size() - 1] - vertices[0]);
      Scalar len = Scalar(0);
      for (Eigen::Index j = 1; j < vertices.size(); ++j)
        len += std::abs(vertices[j] - vertices[j - 1]);
      if (gap > Scalar(1e-8) * len)
        throw NotClosed("closed curve endpoint gap exceeds tolerance");
    }
  }
};

using PlaneCurve = PlaneCurveT<double>;

/// Polar coordinates of the derivative: piecewise-constant radius r_j = |v_j|
/// and unwrapped angle theta_j. Consecutive angles differ by at most pi, and
/// r_j * exp(i * theta_j) reconstructs v_j.
template <class Scalar>
struct PolarDerivativeT {
  RealArray<Scalar> r;
  RealArray<Scalar> theta;
  RealArray<Scalar> params;
};

using PolarDerivative = PolarDerivativeT<double>;

/// Descriptor of a parametric curve on [0, 1] used for secant sampling.
template <class Scalar>
struct CurveGeneratorT {
  std::function<std::complex<Scalar>(Scalar)> eval;
  bool closed = false;
};

using CurveGenerator = CurveGeneratorT<double>;

template <class Scalar>
RealArray<Scalar> segment_lengths(const RealArray<Scalar>& params) {
  return params.tail(params.size() - 1) - params.head(params.size() - 1);
}

/// Edge vectors v_j = (z_j - z_{j-1}) / (t_j - t_{j-1}), j = 1..k.
template <class Scalar>
ComplexArray<Scalar> edge_vectors(const PlaneCurveT<Scalar>& c) {
  const Eigen::Index k = c.segment_count();
  ComplexArray<Scalar> v(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const std::complex<Scalar> dz = c.vertices[j + 1] - c.vertices[j];
    if (dz == std::complex<Scalar>(0, 0)) throw ZeroEdge(std::size_t(j + 1));
    v[j] = dz / (c.params[j + 1] - c.params[j]);
  }
  return v;
}

template <class Scalar>
Scalar arclength(const PlaneCurveT<Scalar>& c) {
  Scalar len = Scalar(0);
  for (Eigen::Index j = 1; j < c.vertices.size(); ++j)
    len += std::abs(c.vertices[j] - c.vertices[j - 1]);
  return len;
}

/// Unsigned turning angle between two edge directions, in [0, pi].
template <class Scalar>
Scalar turn_magnitude(const std::complex<Scalar>& u, const std::complex<Scalar>& v) {
  const std::complex<Scalar> w = u * std::conj(v);
  const Scalar m = std::abs(w);
  if (m == Scalar(0)) throw ZeroEdge(0);
  const Scalar x = std::clamp(w.real() / m, Scalar(-1), Scalar(1));
  return std::acos(x);
}

/// Orientation sign of the turn from u to v. Counterclockwise turns are
/// positive; the degenerate cross product 0 maps to -1.
template <class Scalar>
Scalar turn_sign(const std::complex<Scalar>& u, const std::complex<Scalar>& v) {
  const Scalar cross = u.real() * v.imag() - u.imag() * v.real();
  return cross > Scalar(0) ? Scalar(1) : Scalar(-1);
}

/// Signed turning angle s * dtheta in [-pi, pi].
template <class Scalar>
Scalar signed_turn(const std::complex<Scalar>& u, const std::complex<Scalar>& v) {
  return turn_sign(u, v) * turn_magnitude(u, v);
}

/// Exterior angles dtheta_j for j = 2..k (one per interior corner).
template <class Scalar>
RealArray<Scalar> exterior_angles(const PlaneCurveT<Scalar>& c) {
  const ComplexArray<Scalar> v = edge_vectors(c);
  RealArray<Scalar> ang(v.size() - 1);
  for (Eigen::Index j = 1; j < v.size(); ++j)
    ang[j - 1] = turn_magnitude(v[j - 1], v[j]);
  return ang;
}

/// Polar decomposition of the derivative. The first angle is the
/// quadrant-correct angle of v_1 in (-pi, pi]; subsequent angles follow the
/// recursion theta_j = theta_{j-1} + s_j * dtheta_j, which keeps consecutive
/// values within pi of each other and preserves r_j exp(i theta_j) = v_j.
template <class Scalar>
PolarDerivativeT<Scalar> polar_decompose(const PlaneCurveT<Scalar>& c) {
  const ComplexArray<Scalar> v = edge_vectors(c);
  const Eigen::Index k = v.size();
  PolarDerivativeT<Scalar> p;
  p.r = v.abs();
  p.theta.resize(k);
  p.params = c.params;
  p.theta[0] = std::atan2(v[0].imag(), v[0].real());
  for (Eigen::Index j = 1; j < k; ++j)
    p.theta[j] = p.theta[j - 1] + signed_turn(v[j - 1], v[j]);
  return p;
}

/// Whitney rotation index of a closed PL immersion: total turning of the
/// derivative, including the closing turn from the last edge back to the
/// first, divided by 2 pi.
template <class Scalar>
int rotation_index(const PlaneCurveT<Scalar>& c) {
  const Scalar gap = std::abs(c.vertices[c.vertices.size() - 1] - c.vertices[0]);
  if (gap > Scalar(1e-8) * arclength(c))
    throw NotClosed("rotation index needs a closed curve");
  const ComplexArray<Scalar> v = edge_vectors(c);
  const PolarDerivativeT<Scalar> p = polar_decompose(c);
  const Scalar wrap = p.theta[v.size() - 1] + signed_turn(v[v.size() - 1], v[0]);
  const Scalar total = wrap - p.theta[0];
  return int(std::lround(total / (Scalar(2) * std::numbers::pi_v<Scalar>)));
}

/// Translate the first vertex to the origin and/or rescale to unit arclength.
template <class Scalar>
PlaneCurveT<Scalar> normalize(const PlaneCurveT<Scalar>& c, bool translate = true,
                              bool scale = true) {
  PlaneCurveT<Scalar> out = c;
  if (translate) {
    const std::complex<Scalar> base = out.vertices[0];
    out.vertices -= base;
  }
  if (scale) {
    const std::complex<Scalar> inv(Scalar(1) / arclength(c), Scalar(0));
    out.vertices *= inv;
  }
  return out;
}

/// Point on the curve at parameter t (PL interpolation).
template <class Scalar>
std::complex<Scalar> evaluate(const PlaneCurveT<Scalar>& c, Scalar t) {
  t = std::clamp(t, Scalar(0), Scalar(1));
  const auto* begin = c.params.data();
  const auto* end = begin + c.params.size();
  Eigen::Index j = std::upper_bound(begin, end, t) - begin;
  j = std::clamp<Eigen::Index>(j, 1, c.params.size() - 1);
  const Scalar w = (t - c.params[j - 1]) / (c.params[j] - c.params[j - 1]);
  return c.vertices[j - 1] + w * (c.vertices[j] - c.vertices[j - 1]);
}

/// Resample to n vertices at uniform parameter spacing. The trace is
/// preserved wherever the new grid contains the old breakpoints.
template <class Scalar>
PlaneCurveT<Scalar> resample_uniform(const PlaneCurveT<Scalar>& c, Eigen::Index n) {
  if (n < 2) throw Error("resample needs n >= 2");
  ComplexArray<Scalar> z(n);
  for (Eigen::Index i = 0; i < n; ++i)
    z[i] = evaluate(c, Scalar(i) / Scalar(n - 1));
  return PlaneCurveT<Scalar>::with_uniform_params(std::move(z), c.closed);
}

/// Secant polygon through generator(j / (n-1)), j = 0..n-1.
template <class Scalar>
PlaneCurveT<Scalar> secant_sample(const CurveGeneratorT<Scalar>& g, Eigen::Index n) {
  if (n < 2) throw Error("secant sample needs n >= 2");
  ComplexArray<Scalar> z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = g.eval(Scalar(i) / Scalar(n - 1));
  return PlaneCurveT<Scalar>::with_uniform_params(std::move(z), g.closed);
}

namespace generators {

template <class Scalar = double>
CurveGeneratorT<Scalar> circle(int turns = 1) {
  return {[turns](Scalar t) {
            const Scalar a = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(turns) * t;
            return std::complex<Scalar>(std::cos(a), std::sin(a));
          },
          true};
}

template <class Scalar = double>
CurveGeneratorT<Scalar> ellipse(Scalar rx, Scalar ry) {
  return {[rx, ry](Scalar t) {
            const Scalar a = Scalar(2) * std::numbers::pi_v<Scalar> * t;
            return std::complex<Scalar>(rx * std::cos(a), ry * std::sin(a));
          },
          true};
}

/// Gerono-style figure eight; rotation index 0.
template <class Scalar = double>
CurveGeneratorT<Scalar> figure_eight() {
  return {[](Scalar t) {
            const Scalar a = Scalar(2) * std::numbers::pi_v<Scalar> * t;
            return std::complex<Scalar>(std::cos(a), std::sin(a) * std::cos(a));
          },
          true};
}

}  // namespace generators

}  // namespace elastica
