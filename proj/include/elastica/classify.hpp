#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "elastica/io.hpp"
#include "elastica/types.hpp"

namespace elastica::classify {

enum class Method { elastic, arclength };

struct Options {
  ElasticParams params{1.0, 0.5};
  Method method = Method::elastic;
  bool fixed_length = true;
  int grid_n = 48;
  int slope_window = 4;
  int seed_count = 0;    ///< closed-curve seed search granularity; 0 = all
  int steps = 5;         ///< path points for closed-curve distances
  int arclength_samples = 96;
  int jobs = 0;          ///< 0 = hardware concurrency
};

/// Distance between two dataset curves under the configured method. Closed
/// geodesic machinery is used when both curves are closed. Numerical failures
/// in the closed pipeline fall back to the flat matched distance; fell_back,
/// when given, records that.
double pair_distance(const PlaneCurve& a, const PlaneCurve& b, const Options& opts,
                     bool* fell_back = nullptr);

struct DistanceMatrix {
  Eigen::MatrixXd values;
  int failures = 0;  ///< pairs where the closed pipeline fell back to flat
};

/// Full (asymmetric) pairwise matrix, rows = from, cols = to; computed in
/// parallel over entries.
DistanceMatrix distance_matrix(const std::vector<io::DatasetSample>& samples,
                               const Options& opts);

struct LooReport {
  double overall_rate = 0;              ///< fraction correct in [0, 1]
  std::vector<double> class_rates;
  int perfect_classes = 0;
  std::vector<int> predicted;
  std::vector<int> nearest;
};

/// Leave-one-out nearest neighbor using symmetrized distances
/// (d_ij + d_ji) / 2.
LooReport leave_one_out(const Eigen::MatrixXd& dist, const std::vector<int>& labels,
                        int n_classes);

std::string format_report(const io::Dataset& ds, const DistanceMatrix& dm,
                          const LooReport& rep, const Options& opts);

void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<io::DatasetSample>& samples,
                      const Eigen::MatrixXd& dist);

/// Baseline: uniform arclength resampling, centroid alignment, optimal
/// rotation, pointwise L2. No reparameterization search.
double arclength_l2_distance(const PlaneCurve& a, const PlaneCurve& b, int samples);

/// Curve resampled at n points equally spaced in arclength.
PlaneCurve resample_by_arclength(const PlaneCurve& c, int n);

}  // namespace elastica::classify
