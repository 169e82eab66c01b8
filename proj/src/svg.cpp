#include "elastica/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "elastica/errors.hpp"

namespace elastica::svg {

namespace {

constexpr double kCell = 160.0;
constexpr double kMargin = 14.0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const char* stroke, double width) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
      << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out << ' ';
    out << fmt(pts[i].first) << ',' << fmt(pts[i].second);
  }
  out << "\"/>";
  return out.str();
}

}  // namespace

std::string geodesic_figure(const std::vector<PlaneCurve>& steps,
                            const Reparameterization& gamma) {
  if (steps.empty()) throw Error("svg: no path curves");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : steps)
    for (Eigen::Index i = 0; i < c.vertices.size(); ++i) {
      xmin = std::min(xmin, c.vertices[i].real());
      xmax = std::max(xmax, c.vertices[i].real());
      ymin = std::min(ymin, c.vertices[i].imag());
      ymax = std::max(ymax, c.vertices[i].imag());
    }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (kCell - 2 * kMargin) / span;
  const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;

  const double width = kCell * double(steps.size());
  const double height = kCell + kCell;  // curve row plus warp panel
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' '
      << fmt(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n";

  for (std::size_t s = 0; s < steps.size(); ++s) {
    const double ox = kCell * double(s) + kCell / 2;
    const double oy = kCell / 2;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(std::size_t(steps[s].vertices.size()));
    for (Eigen::Index i = 0; i < steps[s].vertices.size(); ++i) {
      const auto z = steps[s].vertices[i];
      // flip y so the plane's orientation matches the screen
      pts.emplace_back(ox + (z.real() - cx) * scale, oy - (z.imag() - cy) * scale);
    }
    out << "<g class=\"step\">" << polyline(pts, "#1f4e8c", 1.6) << "</g>\n";
  }

  // Warp panel: identity in red, gamma in blue.
  const double px = kMargin, py = kCell + kMargin, side = kCell - 2 * kMargin;
  out << "<g class=\"warp\">\n";
  out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(side)
      << "\" height=\"" << fmt(side) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.8\"/>\n";
  out << polyline({{px, py + side}, {px + side, py}}, "#c03030", 1.2) << "\n";
  std::vector<std::pair<double, double>> gpts;
  gpts.reserve(std::size_t(gamma.breakpoints.size()));
  for (Eigen::Index i = 0; i < gamma.breakpoints.size(); ++i)
    gpts.emplace_back(px + gamma.breakpoints[i] * side, py + side - gamma.values[i] * side);
  out << polyline(gpts, "#2040c0", 1.6) << "\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace elastica::svg
