#include "elastica/classify.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <thread>

#include "elastica/errors.hpp"
#include "elastica/geodesics.hpp"
#include "elastica/matching.hpp"

namespace elastica::classify {

PlaneCurve resample_by_arclength(const PlaneCurve& c, int n) {
  const Eigen::Index k = c.segment_count();
  RealArray<double> cum(k + 1);
  cum[0] = 0;
  for (Eigen::Index j = 0; j < k; ++j)
    cum[j + 1] = cum[j] + std::abs(c.vertices[j + 1] - c.vertices[j]);
  const double total = cum[k];
  ComplexArray<double> z(n);
  Eigen::Index seg = 0;
  for (int i = 0; i < n; ++i) {
    const double s = total * double(i) / double(n - 1);
    while (seg < k - 1 && cum[seg + 1] < s) ++seg;
    const double w = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
    z[i] = c.vertices[seg] + w * (c.vertices[seg + 1] - c.vertices[seg]);
  }
  return PlaneCurve::with_uniform_params(std::move(z), c.closed);
}

double arclength_l2_distance(const PlaneCurve& a, const PlaneCurve& b, int samples) {
  const PlaneCurve ra = resample_by_arclength(normalize(a), samples);
  const PlaneCurve rb = resample_by_arclength(normalize(b), samples);
  ComplexArray<double> pa = ra.vertices, pb = rb.vertices;
  const std::complex<double> ca = pa.sum() / double(samples);
  const std::complex<double> cb = pb.sum() / double(samples);
  pa -= ca;
  pb -= cb;
  const std::complex<double> z = (pa * pb.conjugate()).sum();
  const std::complex<double> rot =
      std::abs(z) > 1e-14 ? std::polar(1.0, std::arg(z)) : std::complex<double>(1, 0);
  double acc = 0;
  for (int i = 0; i < samples; ++i) acc += std::norm(pa[i] - rot * pb[i]);
  return std::sqrt(acc / samples);
}

double pair_distance(const PlaneCurve& a, const PlaneCurve& b, const Options& opts,
                     bool* fell_back) {
  if (fell_back) *fell_back = false;
  if (opts.method == Method::arclength)
    return arclength_l2_distance(a, b, opts.arclength_samples);
  ShapeGeodesicOptions go;
  go.closed = a.closed && b.closed;
  go.fixed_length = opts.fixed_length;
  go.steps = opts.steps;
  go.match.grid_n = opts.grid_n;
  go.match.slope_window = opts.slope_window;
  go.match.seed_count = opts.seed_count;
  if (!go.closed) return shape_distance(a, b, opts.params, go);
  try {
    return shape_distance(a, b, opts.params, go);
  } catch (const Error&) {
    // Closed pipeline failed to converge; score the pair by the flat matched
    // distance so the matrix stays usable.
    if (fell_back) *fell_back = true;
    ShapeGeodesicOptions open = go;
    open.closed = false;
    return shape_distance(a, b, opts.params, open);
  }
}

DistanceMatrix distance_matrix(const std::vector<io::DatasetSample>& samples,
                               const Options& opts) {
  const int n = int(samples.size());
  DistanceMatrix out;
  out.values = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(std::size_t(n) * std::size_t(n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      opts.jobs > 0 ? unsigned(opts.jobs) : std::min<unsigned>(hw, unsigned(pairs.size()) + 1);
  const auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) return;
      const auto [i, j] = pairs[idx];
      bool fell_back = false;
      const double d = pair_distance(samples[std::size_t(i)].curve,
                                     samples[std::size_t(j)].curve, opts, &fell_back);
      if (fell_back) failures.fetch_add(1);
      out.values(i, j) = d;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  out.failures = failures.load();
  return out;
}

LooReport leave_one_out(const Eigen::MatrixXd& dist, const std::vector<int>& labels,
                        int n_classes) {
  const int n = int(labels.size());
  LooReport rep;
  rep.predicted.resize(std::size_t(n));
  rep.nearest.resize(std::size_t(n));
  std::vector<int> correct(std::size_t(n_classes), 0), total(std::size_t(n_classes), 0);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (dist(i, j) + dist(j, i)) / 2;
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    rep.nearest[std::size_t(i)] = best;
    rep.predicted[std::size_t(i)] = labels[std::size_t(best)];
    ++total[std::size_t(labels[std::size_t(i)])];
    if (labels[std::size_t(best)] == labels[std::size_t(i)])
      ++correct[std::size_t(labels[std::size_t(i)])];
  }
  rep.class_rates.resize(std::size_t(n_classes));
  int all_correct = 0;
  for (int c = 0; c < n_classes; ++c) {
    rep.class_rates[std::size_t(c)] =
        total[std::size_t(c)] ? double(correct[std::size_t(c)]) / total[std::size_t(c)] : 0.0;
    if (total[std::size_t(c)] && correct[std::size_t(c)] == total[std::size_t(c)])
      ++rep.perfect_classes;
    all_correct += correct[std::size_t(c)];
  }
  rep.overall_rate = n ? double(all_correct) / n : 0.0;
  return rep;
}

std::string format_report(const io::Dataset& ds, const DistanceMatrix& dm,
                          const LooReport& rep, const Options& opts) {
  std::ostringstream out;
  out << "method: " << (opts.method == Method::elastic ? "elastic" : "arclength") << "\n";
  if (opts.method == Method::elastic)
    out << "a: " << opts.params.a << "\nb: " << opts.params.b
        << "\na/(2b): " << opts.params.rho() << "\n";
  out << "samples: " << ds.samples.size() << "\nclasses: " << ds.classes.size() << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "overall rate: %.2f%%\n", 100.0 * rep.overall_rate);
  out << line;
  out << "perfect classes: " << rep.perfect_classes << "\n";
  if (dm.failures) out << "fallback pairs (flat distance used): " << dm.failures << "\n";
  out << "per-class rates:\n";
  for (std::size_t c = 0; c < ds.classes.size(); ++c) {
    std::snprintf(line, sizeof line, "  %-24s %.2f%%\n", ds.classes[c].c_str(),
                  100.0 * rep.class_rates[c]);
    out << line;
  }
  return out.str();
}

void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<io::DatasetSample>& samples,
                      const Eigen::MatrixXd& dist) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "name";
  for (const auto& s : samples) out << ',' << s.class_name << '/' << s.name;
  out << '\n';
  char cell[48];
  for (int i = 0; i < dist.rows(); ++i) {
    out << samples[std::size_t(i)].class_name << '/' << samples[std::size_t(i)].name;
    for (int j = 0; j < dist.cols(); ++j) {
      std::snprintf(cell, sizeof cell, ",%.12g", dist(i, j));
      out << cell;
    }
    out << '\n';
  }
}

}  // namespace elastica::classify
