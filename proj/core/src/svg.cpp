#include "cspath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cspath/io.hpp"

namespace cspath::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Scale {
  double lo = 0.0, hi = 1.0, out_lo = 0.0, out_hi = 1.0;

  double operator()(double v) const {
    const double span = hi - lo;
    const double t = span > 0 ? (v - lo) / span : 0.5;
    return out_lo + t * (out_hi - out_lo);
  }
};

// Round tick step to 1/2/5 times a power of ten.
std::vector<double> ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return out;
}

void expand(double v, double& lo, double& hi) {
  lo = std::min(lo, v);
  hi = std::max(hi, v);
}

}  // namespace

std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (double v : s.x) expand(v, x_lo, x_hi);
    for (double v : s.y) expand(v, y_lo, y_hi);
    for (double v : s.band_lo) expand(v, y_lo, y_hi);
    for (double v : s.band_hi) expand(v, y_lo, y_hi);
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0; x_hi = 1.0; y_lo = 0.0; y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const Scale sx{x_lo, x_hi, kMarginLeft, kWidth - kMarginRight};
  const Scale sy{y_lo, y_hi, kHeight - kMarginBottom, kMarginTop};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(kMarginTop)
      << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\""
      << fmt(kHeight - kMarginBottom) << "\"/>\n";
  out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\""
      << fmt(kHeight - kMarginBottom) << "\" x2=\"" << fmt(kWidth - kMarginRight)
      << "\" y2=\"" << fmt(kHeight - kMarginBottom) << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : ticks(x_lo, x_hi)) {
    const double px = sx(t);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kHeight - kMarginBottom)
        << "\" x2=\"" << fmt(px) << "\" y2=\""
        << fmt(kHeight - kMarginBottom + 4) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\""
        << fmt(kHeight - kMarginBottom + 16) << "\" text-anchor=\"middle\">"
        << fmt(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    const double py = sy(t);
    out << "<line x1=\"" << fmt(kMarginLeft - 4) << "\" y1=\"" << fmt(py)
        << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kHeight / 2
      << ")\">" << xml_escape(y_label) << "</text>\n";
  out << "</g>\n";

  // Shaded bands first so lines draw on top.
  for (const auto& s : series) {
    if (s.band_lo.size() == s.x.size() && s.band_hi.size() == s.x.size() &&
        !s.x.empty()) {
      out << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.18\" "
             "stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.band_hi[i])) << ' ';
      for (std::size_t i = s.x.size(); i-- > 0;)
        out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.band_lo[i])) << ' ';
      out << "\"/>\n";
    }
  }
  for (const auto& s : series) {
    if (s.x.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i])) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << "<circle cx=\"" << fmt(sx(s.x[i])) << "\" cy=\"" << fmt(sy(s.y[i]))
          << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
  }

  // Legend, top-right corner.
  double ly = kMarginTop + 6;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    out << "<rect x=\"" << fmt(kWidth - kMarginRight - 150) << "\" y=\""
        << fmt(ly) << "\" width=\"14\" height=\"3\" fill=\"" << s.color
        << "\"/>\n";
    out << "<text x=\"" << fmt(kWidth - kMarginRight - 130) << "\" y=\""
        << fmt(ly + 5)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">"
        << xml_escape(s.label) << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_heatmap(const DenseMatrix& values, const std::string& title) {
  const Eigen::Index rows = values.rows();
  const Eigen::Index cols = values.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("heatmap: empty grid");
  const double plot = 400.0;
  const double cell = plot / double(std::max(rows, cols));
  const double width = kMarginLeft + cell * double(cols) + kMarginRight;
  const double height = kMarginTop + cell * double(rows) + 24.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double v = std::clamp(values(r, c), 0.0, 1.0);
      const int g = int(std::lround(v * 255.0));
      out << "<rect x=\"" << fmt(kMarginLeft + cell * double(c)) << "\" y=\""
          << fmt(kMarginTop + cell * double(r)) << "\" width=\""
          << fmt(cell + 0.5) << "\" height=\"" << fmt(cell + 0.5)
          << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  out << "</svg>\n";
  return out.str();
}

std::string render_path_overlay(int grid_rows, int grid_cols,
                                const PathPlan& plan, const std::string& title) {
  if (grid_rows < 1 || grid_cols < 1)
    throw std::invalid_argument("path overlay: empty grid");
  const double plot = 400.0;
  const double cell = plot / double(std::max(grid_rows, grid_cols));
  const double width = kMarginLeft + cell * double(grid_cols) + kMarginRight;
  const double height = kMarginTop + cell * double(grid_rows) + 24.0;
  auto px = [&](int c) { return kMarginLeft + cell * (double(c) + 0.5); };
  auto py = [&](int r) { return kMarginTop + cell * (double(r) + 0.5); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  out << "<g stroke=\"#ddd\" stroke-width=\"0.5\">\n";
  for (int r = 0; r <= grid_rows; ++r)
    out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\""
        << fmt(kMarginTop + cell * r) << "\" x2=\""
        << fmt(kMarginLeft + cell * grid_cols) << "\" y2=\""
        << fmt(kMarginTop + cell * r) << "\"/>\n";
  for (int c = 0; c <= grid_cols; ++c)
    out << "<line x1=\"" << fmt(kMarginLeft + cell * c) << "\" y1=\""
        << fmt(kMarginTop) << "\" x2=\"" << fmt(kMarginLeft + cell * c)
        << "\" y2=\"" << fmt(kMarginTop + cell * grid_rows) << "\"/>\n";
  out << "</g>\n";
  if (plan.waypoints.size() > 1) {
    out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" "
           "points=\"";
    for (const auto& wp : plan.waypoints)
      out << fmt(px(wp.col)) << ',' << fmt(py(wp.row)) << ' ';
    out << "\"/>\n";
  }
  for (const auto& wp : plan.waypoints)
    out << "<circle cx=\"" << fmt(px(wp.col)) << "\" cy=\"" << fmt(py(wp.row))
        << "\" r=\"" << fmt(std::max(2.0, cell * 0.22))
        << "\" fill=\"#1f77b4\"/>\n";
  if (!plan.waypoints.empty())
    out << "<circle cx=\"" << fmt(px(plan.waypoints.front().col)) << "\" cy=\""
        << fmt(py(plan.waypoints.front().row)) << "\" r=\""
        << fmt(std::max(3.0, cell * 0.3))
        << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  write_text_file(path, render_line_chart(title, x_label, y_label, series));
}

void write_heatmap(const std::string& path, const DenseMatrix& values,
                   const std::string& title) {
  write_text_file(path, render_heatmap(values, title));
}

void write_path_overlay(const std::string& path, int grid_rows, int grid_cols,
                        const PathPlan& plan, const std::string& title) {
  write_text_file(path, render_path_overlay(grid_rows, grid_cols, plan, title));
}

}  // namespace cspath::svg
