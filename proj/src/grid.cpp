#include "algodecon/grid.hpp"

#include "algodecon/error.hpp"

namespace algodecon {

BitString parse_bits(std::string_view text) {
  BitString bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch != '\n' && ch != '\r' && ch != ' ' && ch != '\t') {
      throw DataError(std::string("not a binary symbol: '") + ch + "'");
    }
  }
  return bits;
}

std::string to_string(const BitString& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = static_cast<char>('0' + bits[i]);
  return out;
}

Grid Grid::from_rows(const std::vector<std::string>& lines) {
  if (lines.empty()) throw DataError("grid has no rows");
  Grid g(lines.size(), lines.front().size());
  if (g.cols_ == 0) throw DataError("grid has empty rows");
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != g.cols_) throw DataError("ragged grid: row " + std::to_string(r));
    for (std::size_t c = 0; c < g.cols_; ++c) {
      char ch = lines[r][c];
      if (ch != '0' && ch != '1') throw DataError(std::string("not a binary cell: '") + ch + "'");
      g(r, c) = static_cast<std::uint8_t>(ch - '0');
    }
  }
  return g;
}

bool Grid::is_binary() const {
  for (auto v : cells_)
    if (v > 1) return false;
  return true;
}

std::vector<std::string> Grid::to_rows() const {
  std::vector<std::string> out(rows_, std::string(cols_, '0'));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = static_cast<char>('0' + (*this)(r, c));
  return out;
}

}  // namespace algodecon
