#include "elastica/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elastica/errors.hpp"
#include "json.hpp"

namespace elastica::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CurveFile parse_json_curve(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw Error("parse error in " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error("parse error in " + path.string() + ": missing vertices array");
  const auto& verts = doc["vertices"];
  if (verts.size() < 2)
    throw Error("parse error in " + path.string() + ": need at least 2 vertices");
  ComplexArray<double> z(Eigen::Index(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& v = verts[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error("parse error in " + path.string() + ": vertex " + std::to_string(i) +
                  " is not an [x, y] pair");
    z[Eigen::Index(i)] = std::complex<double>(v[0].get<double>(), v[1].get<double>());
  }
  const bool closed = doc.value("closed", false);
  CurveFile out;
  out.name = doc.value("name", path.stem().string());
  if (doc.contains("params")) {
    const auto& ps = doc["params"];
    if (!ps.is_array() || ps.size() != verts.size())
      throw Error("parse error in " + path.string() + ": params must match vertices");
    RealArray<double> t(Eigen::Index(ps.size()));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!ps[i].is_number())
        throw Error("parse error in " + path.string() + ": params must be numbers");
      t[Eigen::Index(i)] = ps[i].get<double>();
    }
    out.curve = PlaneCurve(std::move(z), std::move(t), closed);
  } else {
    out.curve = PlaneCurve::with_uniform_params(std::move(z), closed);
  }
  return out;
}

CurveFile parse_columns_curve(const fs::path& path, bool closed) {
  CurveFile out;
  out.name = path.stem().string();
  out.curve = read_point_list(path, closed);
  return out;
}

}  // namespace

CurveFile read_curve_file(const fs::path& path) {
  if (!fs::exists(path)) throw Error("no such file: " + path.string());
  if (path.extension() == ".json") return parse_json_curve(path);
  return parse_columns_curve(path, false);
}

void write_curve_json(const fs::path& path, const PlaneCurve& curve,
                      const std::string& name) {
  json doc;
  doc["name"] = name;
  doc["closed"] = curve.closed;
  json verts = json::array();
  for (Eigen::Index i = 0; i < curve.vertices.size(); ++i)
    verts.push_back({curve.vertices[i].real(), curve.vertices[i].imag()});
  doc["vertices"] = std::move(verts);
  json params = json::array();
  for (Eigen::Index i = 0; i < curve.params.size(); ++i) params.push_back(curve.params[i]);
  doc["params"] = std::move(params);
  std::ofstream outf(path);
  if (!outf) throw Error("cannot write " + path.string());
  outf << doc.dump(2) << "\n";
}

void write_transform_csv(const fs::path& path, const TransformedCurve& q) {
  std::ofstream outf(path);
  if (!outf) throw Error("cannot write " + path.string());
  outf << "t,q_re,q_im\n";
  char line[128];
  for (Eigen::Index j = 0; j < q.samples.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", q.params[j + 1],
                  q.samples[j].real(), q.samples[j].imag());
    outf << line;
  }
}

TransformedCurve read_transform_csv(const fs::path& path, const ElasticParams& params) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::vector<double> t{0.0};
  std::vector<std::complex<double>> q;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.find("q_re") != std::string::npos) continue;  // header row
    }
    double tj, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &tj, &re, &im) != 3)
      throw Error("parse error in " + path.string() + " line " + std::to_string(lineno));
    t.push_back(tj);
    q.emplace_back(re, im);
  }
  if (q.empty()) throw Error("parse error in " + path.string() + ": no samples");
  if (t.back() != 1.0)
    throw Error("parse error in " + path.string() + ": last breakpoint must be 1");
  TransformedCurve out{ComplexArray<double>(Eigen::Index(q.size())),
                       RealArray<double>(Eigen::Index(t.size())), params};
  for (std::size_t i = 0; i < q.size(); ++i) out.samples[Eigen::Index(i)] = q[i];
  for (std::size_t i = 0; i < t.size(); ++i) out.params[Eigen::Index(i)] = t[i];
  for (Eigen::Index j = 1; j < out.params.size(); ++j)
    if (!(out.params[j] > out.params[j - 1]))
      throw Error("parse error in " + path.string() + ": breakpoints must increase");
  return out;
}

PlaneCurve read_point_list(const fs::path& path, bool closed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::complex<double>> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    double x, y;
    if (!(row >> x)) continue;  // blank or comment-ish line
    if (!(row >> y)) {
      // A single leading integer is a point count; anything else is malformed.
      if (first && x == std::floor(x) && x >= 0) {
        first = false;
        continue;
      }
      throw Error("parse error in " + path.string() + ": expected x y per line");
    }
    first = false;
    pts.emplace_back(x, y);
  }
  if (pts.size() < 2)
    throw Error("parse error in " + path.string() + ": need at least 2 points");
  // Drop exactly repeated consecutive points (pen dwell in digitized data).
  std::vector<std::complex<double>> cleaned;
  cleaned.reserve(pts.size());
  for (const auto& p : pts)
    if (cleaned.empty() || p != cleaned.back()) cleaned.push_back(p);
  if (closed && cleaned.size() > 2 && cleaned.front() != cleaned.back())
    cleaned.push_back(cleaned.front());
  if (cleaned.size() < 2)
    throw Error("parse error in " + path.string() + ": degenerate point list");
  ComplexArray<double> z(Eigen::Index(cleaned.size()));
  for (std::size_t i = 0; i < cleaned.size(); ++i) z[Eigen::Index(i)] = cleaned[i];
  return PlaneCurve::with_uniform_params(std::move(z), closed);
}

Dataset load_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("dataset root is not a directory: " + root.string());
  Dataset ds;
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());
  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) continue;
    const int label = int(ds.classes.size());
    ds.classes.push_back(dir.filename().string());
    int count = 0;
    for (const auto& f : files) {
      CurveFile cf = read_curve_file(f);
      ds.samples.push_back({dir.filename().string(), cf.name, std::move(cf.curve)});
      ds.labels.push_back(label);
      ++count;
    }
    if (count < 2)
      throw Error("dataset class " + dir.filename().string() +
                  " needs at least 2 samples for leave-one-out");
  }
  if (ds.classes.size() < 2) throw Error("dataset needs at least 2 classes");
  return ds;
}

}  // namespace elastica::io
