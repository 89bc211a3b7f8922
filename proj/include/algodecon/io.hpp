#pragma once

// Text formats shared by the CLI and the experiment harness.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "algodecon/grid.hpp"

namespace algodecon::io {

/// Shortest round-trip-stable decimal form used in every CSV ("%.10g").
std::string num(double v);

std::vector<std::string> read_lines(std::istream& in);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// A string object: 0/1 characters, whitespace ignored.
BitString read_bits(const std::filesystem::path& path);
/// A grid object: one row of 0/1 characters per line, blank lines ignored.
Grid read_grid(const std::filesystem::path& path);
void write_grid(const Grid& g, std::ostream& out);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  std::string str() const;
  static Csv parse(const std::string& text);
};

/// Flat key=value text; '#' starts a comment line.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
std::string format_key_values(const KeyValues& kv);

}  // namespace algodecon::io
