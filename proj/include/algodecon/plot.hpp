#pragma once

// Self-contained SVG rendering of experiment CSVs.

#include <string>

#include "algodecon/io.hpp"

namespace algodecon::plot {

enum class Kind { Line, Scatter, Heatmap };
Kind parse_kind(const std::string& s);

struct Options {
  std::string x = "x";
  std::string y = "y";
  std::string value;   // heatmap: numeric column, or a class column (negative/neutral/positive)
  std::string marker;  // line: rows where this column is nonzero get a vertical marker
  std::string title;
  int width = 640;
  int height = 400;
};

/// Line and scatter plot y against x; heatmap places `value` at (y = row, x = col).
std::string emit_plot(const io::Csv& csv, Kind kind, const Options& opt);

}  // namespace algodecon::plot
