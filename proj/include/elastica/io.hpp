#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/transform.hpp"
#include "elastica/types.hpp"

namespace elastica::io {

/// A curve as stored on disk: JSON {name, closed, vertices[, params]} or a
/// two-column x,y text/CSV fallback (open, uniform breakpoints).
struct CurveFile {
  std::string name;
  PlaneCurve curve;
};

CurveFile read_curve_file(const std::filesystem::path& path);
void write_curve_json(const std::filesystem::path& path, const PlaneCurve& curve,
                      const std::string& name);

/// Transform samples as CSV rows (t_j, Re q_j, Im q_j) where t_j is the right
/// breakpoint of segment j; values print with full precision so a reparse is
/// bit-identical.
void write_transform_csv(const std::filesystem::path& path, const TransformedCurve& q);
TransformedCurve read_transform_csv(const std::filesystem::path& path,
                                    const ElasticParams& params);

/// Whitespace-delimited point list (one x y pair per line, extra columns
/// ignored, a leading single-integer count line skipped).
PlaneCurve read_point_list(const std::filesystem::path& path, bool closed);

struct DatasetSample {
  std::string class_name;
  std::string name;
  PlaneCurve curve;
};

/// One subdirectory per class, one curve file per sample. Requires at least
/// two classes and two samples per class.
struct Dataset {
  std::vector<std::string> classes;
  std::vector<DatasetSample> samples;
  std::vector<int> labels;  ///< class index per sample
};

Dataset load_dataset(const std::filesystem::path& root);

}  // namespace elastica::io
