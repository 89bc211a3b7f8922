#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace algodecon {

/// Binary sequence, one symbol (0 or 1) per element.
using BitString = std::vector<std::uint8_t>;

BitString parse_bits(std::string_view text);
std::string to_string(const BitString& bits);

/// Dense row-major 2D array over a small alphabet. Binary grids hold 0/1;
/// interacting-CA grids hold -1/0/+1 in an int8 view (see ca.hpp).
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  static Grid from_rows(const std::vector<std::string>& lines);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  std::uint8_t operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::uint8_t& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }

  const std::vector<std::uint8_t>& cells() const { return cells_; }
  std::vector<std::uint8_t>& cells() { return cells_; }

  bool is_binary() const;
  std::vector<std::string> to_rows() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace algodecon
