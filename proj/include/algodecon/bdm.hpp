#pragma once

// Block Decomposition Method: the complexity of a large object is the sum,
// over its distinct non-overlapping blocks r with multiplicity n, of
// CTM(r) + log2(n).

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "algodecon/ctm.hpp"
#include "algodecon/grid.hpp"

namespace algodecon::bdm {

struct BlockShape {
  int rows = 1;
  int cols = 1;
  int area() const { return rows * cols; }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

struct BlockCount {
  std::string key;  // CTM object key, see ctm.hpp
  std::uint64_t multiplicity = 0;
};

/// Non-overlapping partition from the top-left origin. `blocks` holds the
/// distinct full-size blocks in key order; `leftovers` the smaller boundary
/// blocks (right and bottom edges) in row-major block order.
struct BlockDecomposition {
  BlockShape block_shape;
  std::vector<BlockCount> blocks;
  std::vector<std::string> leftovers;
};

BlockDecomposition decompose(const BitString& s, int block_size);
BlockDecomposition decompose(const Grid& g, int block_size);

enum class Method { CtmExact, CtmWithFallback, EntropyOnly };
const char* method_name(Method m);

struct ComplexityEstimate {
  double bits = 0.0;
  Method method = Method::CtmExact;
  double coverage = 1.0;  // fraction of block occurrences found in the table
};

inline constexpr int kMaxStringBlock = 12;
inline constexpr int kMaxGridBlock = 4;

/// Dense per-shape block values derived from a CTM table. Blocks missing
/// from the table get max(ctmBits) + log2(2^area / entries of that shape).
class Evaluator {
 public:
  /// 1D tables evaluate strings with blocks of length `block_size`; 2D tables
  /// evaluate grids and adjacency matrices with square blocks.
  Evaluator(const ctm::CtmTable& table, int block_size);

  ctm::Dim dim() const { return dim_; }
  int block_size() const { return block_size_; }

  ComplexityEstimate bdm(const BitString& s) const;
  ComplexityEstimate bdm(const Grid& g) const;

  int shape_id(int rows, int cols) const { return rows * (block_size_ + 1) + cols; }
  /// Value of one block given as a row-major code (first cell = MSB).
  double block_bits(int shape, std::uint32_t code) const { return values_[shape][code]; }
  bool in_table(int shape, std::uint32_t code) const { return present_[shape][code] != 0; }

 private:
  ctm::Dim dim_;
  int block_size_;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint8_t>> present_;
};

/// Block histogram of one binary grid (a string is a 1-row grid) that
/// answers "what does BDM become if these cells flip" without recomputing
/// the whole object.
class BlockState {
 public:
  BlockState(const Evaluator& ev, const Grid& g);
  BlockState(const Evaluator& ev, const BitString& s);

  const Grid& object() const { return grid_; }
  double bits() const;
  double coverage() const;
  std::size_t block_count() const { return block_shape_.size(); }

  /// bits(after flipping `cells`) - bits(now); cells are flat row-major
  /// indices and must be distinct.
  double flip_delta(std::span<const std::size_t> cells) const;
  void flip(std::span<const std::size_t> cells);

 private:
  void build();
  static std::uint64_t hkey(int shape, std::uint32_t code) {
    return (static_cast<std::uint64_t>(shape) << 32) | code;
  }
  double term(std::uint64_t key, std::int64_t n) const;

  const Evaluator* ev_;
  Grid grid_;
  bool string_mode_;
  std::vector<std::uint32_t> cell_block_;
  std::vector<std::uint32_t> cell_mask_;
  std::vector<int> block_shape_;
  std::vector<std::uint32_t> block_code_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
};

}  // namespace algodecon::bdm
