// elastica: elastic-metric shape analysis of piecewise-linear plane curves.
//
// Subcommands: transform, invert, geodesic, close, classify, ingest.
// Exit codes: 0 success, 2 input/usage error, 3 geometry error, 4 numerical
// non-convergence. Set ELASTICA_LOG=1 for extra diagnostics on stderr.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elastica/classify.hpp"
#include "elastica/closed.hpp"
#include "elastica/errors.hpp"
#include "elastica/geodesics.hpp"
#include "elastica/io.hpp"
#include "elastica/matching.hpp"
#include "elastica/svg.hpp"
#include "elastica/transform.hpp"

namespace fs = std::filesystem;
using namespace elastica;

namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("ELASTICA_LOG");
    return env ? std::atoi(env) : 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[elastica] " << msg << "\n";
}

// ---------------------------------------------------------------------------
// transform / invert
// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string input, output;
  double a = 1.0, b = 0.5;
};

int run_transform(const TransformArgs& args) {
  const io::CurveFile cf = io::read_curve_file(args.input);
  const TransformedCurve q = forward(cf.curve, ElasticParams(args.a, args.b));
  io::write_transform_csv(args.output, q);
  log_info("transformed " + std::to_string(q.samples.size()) + " segments -> " + args.output);
  return 0;
}

int run_invert(const TransformArgs& args) {
  const TransformedCurve q = io::read_transform_csv(args.input, ElasticParams(args.a, args.b));
  io::write_curve_json(args.output, inverse(q), fs::path(args.output).stem().string());
  return 0;
}

// ---------------------------------------------------------------------------
// geodesic
// ---------------------------------------------------------------------------

struct GeodesicArgs {
  std::string file1, file2;
  double a = 1.0, b = 0.5;
  bool closed = false;
  bool fixed_length = false;
  int steps = 7;
  int grid = 128;
  int window = 4;
  int seeds = 0;
  std::string svg_out;
  std::string out_dir = "geodesic_steps";
};

int run_geodesic(const GeodesicArgs& args) {
  const io::CurveFile f1 = io::read_curve_file(args.file1);
  const io::CurveFile f2 = io::read_curve_file(args.file2);
  if (args.closed && (!f1.curve.closed || !f2.curve.closed))
    throw Error("--closed requires curve files with closed = true");
  ShapeGeodesicOptions opts;
  opts.closed = args.closed;
  opts.fixed_length = args.fixed_length;
  opts.steps = args.steps;
  opts.match.grid_n = args.grid;
  opts.match.slope_window = args.window;
  opts.match.seed_count = args.seeds;
  const ShapeGeodesicResult g = shape_geodesic(f1.curve, f2.curve,
                                               ElasticParams(args.a, args.b), opts);
  std::printf("dist=%.4f\n", g.path.distance);
  if (log_level() >= 1) {
    log_info("rotation " + std::to_string(g.match.rotation) + ", seed " +
             std::to_string(g.match.seed));
    if (g.path.diagnostics.singular_warning)
      log_info("warning: path approaches a vanishing-derivative curve");
    if (g.path.diagnostics.straightened) log_info("polar path straightening engaged");
  }
  fs::create_directories(args.out_dir);
  for (std::size_t s = 0; s < g.curves.size(); ++s) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%02zu.json", s);
    io::write_curve_json(fs::path(args.out_dir) / name, g.curves[s], name);
  }
  if (!args.svg_out.empty())
    svg::write_file(args.svg_out, svg::geodesic_figure(g.curves, g.match.gamma));
  return 0;
}

// ---------------------------------------------------------------------------
// close
// ---------------------------------------------------------------------------

struct CloseArgs {
  std::string input, output;
  double a = 1.0, b = 0.5;
  double tol = -1.0;
  int max_iter = 200;
};

int run_close(const CloseArgs& args) {
  const io::CurveFile cf = io::read_curve_file(args.input);
  const ElasticParams p(args.a, args.b);
  const TransformedCurve q = forward(normalize(cf.curve), p);
  const double tol = args.tol > 0 ? args.tol : default_closure_tol(p);
  const ProjectionResult res = project_to_closed(q, tol, args.max_iter);
  log_info("projection took " + std::to_string(res.iterations) + " iterations");
  if (!res.converged)
    throw NoConvergence("closure projection stalled at |f| = " + std::to_string(res.defect));
  PlaneCurve closed_curve = inverse(res.q);
  // The residual gap is at tolerance level; snap the endpoint so the output
  // file carries a valid closed flag.
  closed_curve.vertices[closed_curve.vertices.size() - 1] = closed_curve.vertices[0];
  closed_curve.closed = true;
  closed_curve.validate();
  io::write_curve_json(args.output, closed_curve, cf.name + "_closed");
  std::printf("residual=%.3e\n", res.defect);
  return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string root;
  double a = 1.0, b = 0.5;
  bool fixed_length = false;
  int grid = 48;
  int window = 4;
  int seeds = 0;
  int steps = 5;
  int jobs = 0;
  std::string method = "elastic";
  std::string matrix_out = "distance_matrix.csv";
  std::string report_out = "classify_report.txt";
  bool table = false;
};

classify::Options classify_options(const ClassifyArgs& args) {
  classify::Options opts;
  opts.params = ElasticParams(args.a, args.b);
  opts.method = args.method == "arclength" ? classify::Method::arclength
                                           : classify::Method::elastic;
  opts.fixed_length = args.fixed_length;
  opts.grid_n = args.grid;
  opts.slope_window = args.window;
  opts.seed_count = args.seeds;
  opts.steps = args.steps;
  opts.jobs = args.jobs;
  return opts;
}

int run_classify(const ClassifyArgs& args) {
  const io::Dataset ds = io::load_dataset(args.root);
  log_info("dataset: " + std::to_string(ds.samples.size()) + " samples, " +
           std::to_string(ds.classes.size()) + " classes");
  if (args.table) {
    // Signature-experiment style sweep: arclength baseline plus a ratio grid,
    // fixed-length shape distances.
    std::string table = "method          rate     perfect\n";
    char line[96];
    {
      classify::Options opts = classify_options(args);
      opts.method = classify::Method::arclength;
      const auto dm = classify::distance_matrix(ds.samples, opts);
      const auto rep = classify::leave_one_out(dm.values, ds.labels, int(ds.classes.size()));
      std::snprintf(line, sizeof line, "%-15s %6.2f    %d\n", "arclength",
                    100.0 * rep.overall_rate, rep.perfect_classes);
      table += line;
    }
    for (const double rho : {0.25, 0.5, 1.0, 2.0, 3.0, 4.0}) {
      classify::Options opts = classify_options(args);
      opts.method = classify::Method::elastic;
      opts.fixed_length = true;
      opts.params = ElasticParams::from_ratio(rho);
      const auto dm = classify::distance_matrix(ds.samples, opts);
      const auto rep = classify::leave_one_out(dm.values, ds.labels, int(ds.classes.size()));
      char label[32];
      std::snprintf(label, sizeof label, "a/2b = %g", rho);
      std::snprintf(line, sizeof line, "%-15s %6.2f    %d\n", label,
                    100.0 * rep.overall_rate, rep.perfect_classes);
      table += line;
      log_info(std::string(label) + " done");
    }
    std::fputs(table.c_str(), stdout);
    if (!args.report_out.empty()) {
      std::ofstream out(args.report_out);
      out << table;
    }
    return 0;
  }
  const classify::Options opts = classify_options(args);
  const classify::DistanceMatrix dm = classify::distance_matrix(ds.samples, opts);
  const classify::LooReport rep =
      classify::leave_one_out(dm.values, ds.labels, int(ds.classes.size()));
  const std::string report = classify::format_report(ds, dm, rep, opts);
  std::fputs(report.c_str(), stdout);
  if (!args.matrix_out.empty()) classify::write_matrix_csv(args.matrix_out, ds.samples, dm.values);
  if (!args.report_out.empty()) {
    std::ofstream out(args.report_out);
    out << report;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string out_dir = "ingested";
  bool closed = false;
};

int run_ingest(const IngestArgs& args) {
  fs::create_directories(args.out_dir);
  int converted = 0;
  const auto convert = [&](const fs::path& src, const fs::path& dst_dir) {
    const PlaneCurve c = io::read_point_list(src, args.closed);
    fs::create_directories(dst_dir);
    io::write_curve_json(dst_dir / (src.stem().string() + ".json"), c, src.stem().string());
    ++converted;
  };
  for (const auto& input : args.inputs) {
    const fs::path in(input);
    if (fs::is_directory(in)) {
      for (const auto& entry : fs::recursive_directory_iterator(in)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path().parent_path(), in);
        convert(entry.path(), fs::path(args.out_dir) / rel);
      }
    } else if (fs::exists(in)) {
      convert(in, args.out_dir);
    } else {
      throw Error("no such input: " + input);
    }
  }
  std::printf("converted=%d\n", converted);
  return 0;
}

// ---------------------------------------------------------------------------

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const ZeroEdge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ZeroSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SegmentMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotClosed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Antipodal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const OffSphere& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const StraighteningFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SingularJacobian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic-metric shape analysis for piecewise-linear plane curves"};
  app.require_subcommand(1);

  TransformArgs targs;
  auto* t = app.add_subcommand("transform", "write the transform of a curve as CSV");
  t->add_option("input", targs.input, "curve file (JSON or x,y columns)")->required();
  t->add_option("output", targs.output, "output CSV path")->required();
  t->add_option("-a", targs.a, "bending weight (> 0)");
  t->add_option("-b", targs.b, "stretching weight (> 0)");

  TransformArgs iargs;
  auto* inv = app.add_subcommand("invert", "reconstruct a curve from transform CSV");
  inv->add_option("input", iargs.input, "transform CSV")->required();
  inv->add_option("output", iargs.output, "output curve JSON")->required();
  inv->add_option("-a", iargs.a, "bending weight (> 0)");
  inv->add_option("-b", iargs.b, "stretching weight (> 0)");

  GeodesicArgs gargs;
  auto* g = app.add_subcommand("geodesic", "geodesic path and distance between two curves");
  g->add_option("file1", gargs.file1, "first curve")->required();
  g->add_option("file2", gargs.file2, "second curve")->required();
  g->add_option("-a", gargs.a, "bending weight (> 0)");
  g->add_option("-b", gargs.b, "stretching weight (> 0)");
  g->add_flag("--closed", gargs.closed, "treat inputs as closed curves");
  g->add_flag("--fixed-length", gargs.fixed_length, "quotient out scale (sphere geometry)");
  g->add_option("--steps", gargs.steps, "path points")->check(CLI::Range(2, 1000));
  g->add_option("--grid", gargs.grid, "warp grid segments");
  g->add_option("--window", gargs.window, "warp slope window");
  g->add_option("--seeds", gargs.seeds, "closed-curve seed count (0 = every vertex)");
  g->add_option("--svg", gargs.svg_out, "write an SVG figure of the path");
  g->add_option("--out", gargs.out_dir, "directory for per-step curve files");

  CloseArgs cargs;
  auto* c = app.add_subcommand("close", "project a curve onto the closed-curve space");
  c->add_option("input", cargs.input, "curve file")->required();
  c->add_option("output", cargs.output, "output curve JSON")->required();
  c->add_option("-a", cargs.a, "bending weight (> 0)");
  c->add_option("-b", cargs.b, "stretching weight (> 0)");
  c->add_option("--tol", cargs.tol, "closure tolerance (default 1e-6 (2b)^2)");
  c->add_option("--max-iter", cargs.max_iter, "projection iteration cap");

  ClassifyArgs kargs;
  auto* k = app.add_subcommand("classify", "leave-one-out nearest-neighbor classification");
  k->add_option("root", kargs.root, "dataset root (one subdirectory per class)")->required();
  k->add_option("-a", kargs.a, "bending weight (> 0)");
  k->add_option("-b", kargs.b, "stretching weight (> 0)");
  k->add_flag("--fixed-length", kargs.fixed_length, "quotient out scale");
  k->add_option("--grid", kargs.grid, "warp grid segments");
  k->add_option("--window", kargs.window, "warp slope window");
  k->add_option("--seeds", kargs.seeds, "closed-curve seed count (0 = every vertex)");
  k->add_option("--steps", kargs.steps, "path points for closed distances");
  k->add_option("--jobs", kargs.jobs, "parallel workers (0 = hardware)");
  k->add_option("--method", kargs.method, "elastic or arclength")
      ->check(CLI::IsMember({"elastic", "arclength"}));
  k->add_option("--matrix", kargs.matrix_out, "distance matrix CSV path");
  k->add_option("--report", kargs.report_out, "text report path");
  k->add_flag("--table", kargs.table, "rate table over a ratio grid plus baseline");

  IngestArgs nargs;
  auto* n = app.add_subcommand("ingest", "convert whitespace point lists to curve JSON");
  n->add_option("inputs", nargs.inputs, "files or directories")->required();
  n->add_option("--out", nargs.out_dir, "output directory");
  n->add_flag("--closed", nargs.closed, "mark converted curves as closed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (t->parsed()) return guarded([&] { return run_transform(targs); });
  if (inv->parsed()) return guarded([&] { return run_invert(iargs); });
  if (g->parsed()) return guarded([&] { return run_geodesic(gargs); });
  if (c->parsed()) return guarded([&] { return run_close(cargs); });
  if (k->parsed()) return guarded([&] { return run_classify(kargs); });
  if (n->parsed()) return guarded([&] { return run_ingest(nargs); });
  return 2;
}
