#include "algodecon/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "algodecon/error.hpp"

namespace algodecon::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_lines(in);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BitString read_bits(const std::filesystem::path& path) { return parse_bits(read_text(path)); }

Grid read_grid(const std::filesystem::path& path) {
  std::vector<std::string> rows;
  for (auto& line : read_lines(path)) {
    auto t = trim(line);
    if (!t.empty()) rows.push_back(t);
  }
  return Grid::from_rows(rows);
}

void write_grid(const Grid& g, std::ostream& out) {
  for (const auto& row : g.to_rows()) out << row << '\n';
}

std::size_t Csv::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("CSV has no column '" + name + "'");
}

std::string Csv::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

Csv Csv::parse(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  bool first = true;
  for (const auto& raw : read_lines(in)) {
    if (trim(raw).empty()) continue;
    auto cells = split_csv_line(raw);
    if (first) {
      csv.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != csv.header.size()) throw DataError("CSV row width differs from the header");
      csv.rows.push_back(std::move(cells));
    }
  }
  if (first) throw DataError("CSV has no header");
  return csv;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::size_t n = 0;
  for (const auto& raw : read_lines(in)) {
    ++n;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("config line " + std::to_string(n) + " has no '='");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw DataError("config line " + std::to_string(n) + " has an empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string format_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace algodecon::io
