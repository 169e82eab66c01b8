#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elastica {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two consecutive vertices coincide over a positive parameter span.
struct ZeroEdge : Error {
  explicit ZeroEdge(std::size_t edge_index)
      : Error("zero-length edge at segment " + std::to_string(edge_index)),
        index(edge_index) {}
  std::size_t index;
};

/// A transform sample vanished where the punctured plane is required.
struct ZeroSample : Error {
  explicit ZeroSample(std::size_t sample_index)
      : Error("zero transform sample at segment " + std::to_string(sample_index)),
        index(sample_index) {}
  std::size_t index;
};

/// A closed curve was expected but the endpoints do not match.
struct NotClosed : Error {
  using Error::Error;
};

/// Operation defined only for a restricted (a, b) regime.
struct ParamRegime : Error {
  using Error::Error;
};

/// Two curves were expected to share a segment count.
struct SegmentMismatch : Error {
  using Error::Error;
};

/// The 2x2 Gram system of the closure gradients is numerically rank-deficient.
struct SingularJacobian : Error {
  using Error::Error;
};

/// An iteration failed to reach its tolerance within the step budget.
struct NoConvergence : Error {
  using Error::Error;
};

/// Sphere endpoints are (numerically) antipodal; the geodesic is not unique.
struct Antipodal : Error {
  using Error::Error;
};

/// An input expected on the fixed-radius sphere is off it.
struct OffSphere : Error {
  using Error::Error;
};

/// Path straightening stalled with energy far above the flat lower bound.
struct StraighteningFailed : Error {
  using Error::Error;
};

}  // namespace elastica
