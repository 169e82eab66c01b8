#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace elastica {

template <class Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Weights of the elastic metric: a scales bending (normal) energy, b scales
/// stretching (tangential) energy. The ratio rho = a / (2b) controls the
/// exponent of the simplifying transform.
template <class Scalar>
struct ElasticParamsT {
  Scalar a = Scalar(1);
  Scalar b = Scalar(0.5);

  ElasticParamsT() = default;

  ElasticParamsT(Scalar a_, Scalar b_) : a(a_), b(b_) {
    if (!(a > Scalar(0)) || !(b > Scalar(0)))
      throw std::invalid_argument("elastic parameters must be positive");
  }

  Scalar rho() const { return a / (Scalar(2) * b); }

  /// Square-root velocity weights (a, b) = (1, 1/2).
  static ElasticParamsT srvf() { return {Scalar(1), Scalar(0.5)}; }

  /// Weights with a = 1 and b chosen so that a/(2b) equals the given ratio.
  static ElasticParamsT from_ratio(Scalar rho) {
    return {Scalar(1), Scalar(1) / (Scalar(2) * rho)};
  }
};

using ElasticParams = ElasticParamsT<double>;

}  // namespace elastica
