#include "algodecon/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "algodecon/error.hpp"

namespace algodecon::plot {

namespace {

double to_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw DataError("non-numeric CSV cell '" + s + "'");
  return v;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
  }
};

const int kMargin = 50;

}  // namespace

Kind parse_kind(const std::string& s) {
  if (s == "line") return Kind::Line;
  if (s == "scatter") return Kind::Scatter;
  if (s == "heatmap") return Kind::Heatmap;
  throw UsageError("plot kind must be line, scatter or heatmap");
}

std::string emit_plot(const io::Csv& csv, Kind kind, const Options& opt) {
  const std::size_t cx = csv.column(opt.x), cy = csv.column(opt.y);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << escape(opt.title) << "</text>\n";
  const double pw = opt.width - 2 * kMargin, ph = opt.height - 2 * kMargin;

  if (kind == Kind::Heatmap) {
    if (opt.value.empty()) throw UsageError("heatmap needs a value column");
    const std::size_t cv = csv.column(opt.value);
    double rows = 0, cols = 0;
    Range vr;
    bool classes = false;
    for (const auto& r : csv.rows) {
      rows = std::max(rows, to_number(r[cy]) + 1);
      cols = std::max(cols, to_number(r[cx]) + 1);
      const auto& v = r[cv];
      if (v == "negative" || v == "neutral" || v == "positive") classes = true;
      else vr.add(to_number(v));
    }
    vr.settle();
    const double cw = pw / std::max(1.0, cols), ch = ph / std::max(1.0, rows);
    for (const auto& r : csv.rows) {
      const auto& v = r[cv];
      std::string fill;
      if (classes) {
        fill = v == "negative" ? "#3b6fb6" : v == "positive" ? "#c0392b" : "#bbbbbb";
      } else {
        const double t = (to_number(v) - vr.lo) / (vr.hi - vr.lo);
        const int red = static_cast<int>(std::lround(255 * t)), blue = 255 - red;
        fill = "rgb(" + std::to_string(red) + ",64," + std::to_string(blue) + ")";
      }
      svg << "<rect x=\"" << io::num(kMargin + to_number(r[cx]) * cw) << "\" y=\""
          << io::num(kMargin + to_number(r[cy]) * ch) << "\" width=\"" << io::num(cw) << "\" height=\""
          << io::num(ch) << "\" fill=\"" << fill << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
  }

  Range xr, yr;
  std::vector<std::pair<double, double>> pts;
  std::vector<double> marks;
  const std::size_t cm = opt.marker.empty() ? 0 : csv.column(opt.marker);
  for (const auto& r : csv.rows) {
    const double x = to_number(r[cx]), y = to_number(r[cy]);
    xr.add(x);
    yr.add(y);
    pts.emplace_back(x, y);
    if (!opt.marker.empty() && to_number(r[cm]) != 0.0) marks.push_back(x);
  }
  xr.settle();
  yr.settle();
  auto px = [&](double x) { return kMargin + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kMargin + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin + ph << "\" x2=\"" << kMargin + pw << "\" y2=\""
      << kMargin + ph << "\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kMargin + ph
      << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"10\">\n"
      << "<text x=\"" << kMargin << "\" y=\"" << opt.height - 15 << "\">" << escape(opt.x) << " " << io::num(xr.lo)
      << " .. " << io::num(xr.hi) << "</text>\n"
      << "<text x=\"5\" y=\"" << kMargin - 10 << "\">" << escape(opt.y) << " " << io::num(yr.lo) << " .. "
      << io::num(yr.hi) << "</text>\n</g>\n";
  for (double m : marks)
    svg << "<line x1=\"" << io::num(px(m)) << "\" y1=\"" << kMargin << "\" x2=\"" << io::num(px(m)) << "\" y2=\""
        << kMargin + ph << "\" stroke=\"#c0392b\" stroke-dasharray=\"4 3\"/>\n";
  if (kind == Kind::Line) {
    svg << "<polyline fill=\"none\" stroke=\"#3b6fb6\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts)
      if (std::isfinite(x) && std::isfinite(y)) svg << io::num(px(x)) << ',' << io::num(py(y)) << ' ';
    svg << "\"/>\n";
  } else {
    for (const auto& [x, y] : pts)
      if (std::isfinite(x) && std::isfinite(y))
        svg << "<circle cx=\"" << io::num(px(x)) << "\" cy=\"" << io::num(py(y)) << "\" r=\"2.5\" fill=\"#3b6fb6\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace algodecon::plot
