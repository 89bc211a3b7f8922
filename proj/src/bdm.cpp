#include "algodecon/bdm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "algodecon/error.hpp"

namespace algodecon::bdm {

namespace {

struct BlockRect {
  std::size_t r0, c0;
  int rows, cols;
};

// Row-major partition of a rows x cols object into blocks of br x bc, with
// smaller blocks along the right and bottom boundaries.
std::vector<BlockRect> partition(std::size_t rows, std::size_t cols, int br, int bc) {
  std::vector<BlockRect> out;
  for (std::size_t r = 0; r < rows; r += br)
    for (std::size_t c = 0; c < cols; c += bc)
      out.push_back({r, c, static_cast<int>(std::min<std::size_t>(br, rows - r)),
                     static_cast<int>(std::min<std::size_t>(bc, cols - c))});
  return out;
}

std::uint32_t block_code(const Grid& g, const BlockRect& b) {
  std::uint32_t code = 0;
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) code = (code << 1) | g(b.r0 + i, b.c0 + j);
  return code;
}

std::string code_cells(std::uint32_t code, int area) {
  std::string cells(area, '0');
  for (int i = 0; i < area; ++i) cells[i] = static_cast<char>('0' + ((code >> (area - 1 - i)) & 1U));
  return cells;
}

std::string block_key(const Grid& g, const BlockRect& b, bool string_mode) {
  std::string cells = code_cells(block_code(g, b), b.rows * b.cols);
  return string_mode ? cells : ctm::grid_key(b.rows, b.cols, cells);
}

Grid as_row(const BitString& s) {
  Grid g(1, s.size());
  std::copy(s.begin(), s.end(), g.cells().begin());
  return g;
}

BlockDecomposition decompose_impl(const Grid& g, int br, int bc, bool string_mode) {
  BlockDecomposition out;
  out.block_shape = {br, bc};
  std::map<std::string, std::uint64_t> full;
  for (const auto& b : partition(g.rows(), g.cols(), br, bc)) {
    std::string key = block_key(g, b, string_mode);
    if (b.rows == br && b.cols == bc) ++full[key];
    else out.leftovers.push_back(std::move(key));
  }
  for (auto& [key, n] : full) out.blocks.push_back({key, n});
  return out;
}

double sum_sorted(std::vector<std::uint64_t>& keys, const Evaluator& ev) {
  std::sort(keys.begin(), keys.end());
  double bits = 0.0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const int shape = static_cast<int>(keys[i] >> 32);
    const auto code = static_cast<std::uint32_t>(keys[i] & 0xffffffffULL);
    bits += ev.block_bits(shape, code) + std::log2(static_cast<double>(j - i));
    i = j;
  }
  return bits;
}

ComplexityEstimate estimate(const Evaluator& ev, const Grid& g, int br, int bc) {
  std::vector<std::uint64_t> keys;
  std::size_t found = 0;
  for (const auto& b : partition(g.rows(), g.cols(), br, bc)) {
    const int shape = ev.shape_id(b.rows, b.cols);
    const std::uint32_t code = block_code(g, b);
    found += ev.in_table(shape, code);
    keys.push_back((static_cast<std::uint64_t>(shape) << 32) | code);
  }
  ComplexityEstimate est;
  est.coverage = static_cast<double>(found) / static_cast<double>(keys.size());
  est.bits = sum_sorted(keys, ev);
  est.method = found == keys.size() ? Method::CtmExact : found == 0 ? Method::EntropyOnly : Method::CtmWithFallback;
  return est;
}

void check_block(int block_size, int limit) {
  if (block_size < 1 || block_size > limit)
    throw UsageError("block size must be in [1, " + std::to_string(limit) + "]");
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::CtmExact: return "ctm-exact";
    case Method::CtmWithFallback: return "ctm-with-fallback";
    case Method::EntropyOnly: return "entropy-only";
  }
  return "?";
}

BlockDecomposition decompose(const BitString& s, int block_size) {
  if (s.empty()) throw DataError("cannot decompose an empty string");
  check_block(block_size, kMaxStringBlock);
  return decompose_impl(as_row(s), 1, block_size, true);
}

BlockDecomposition decompose(const Grid& g, int block_size) {
  if (g.empty()) throw DataError("cannot decompose an empty grid");
  check_block(block_size, kMaxGridBlock);
  return decompose_impl(g, block_size, block_size, false);
}

Evaluator::Evaluator(const ctm::CtmTable& table, int block_size)
    : dim_(table.machine_class().dim), block_size_(block_size) {
  check_block(block_size, dim_ == ctm::Dim::One ? kMaxStringBlock : kMaxGridBlock);
  if (table.halted_runs() == 0) throw TableError("CTM table has no halting outputs");
  const double max_bits = table.max_bits();
  values_.resize(static_cast<std::size_t>((block_size + 1) * (block_size + 1)));
  present_.resize(values_.size());

  // Count table entries per shape once.
  std::map<std::pair<int, int>, std::size_t> per_shape;
  for (const auto& [key, n] : table.counts()) {
    const auto s = ctm::parse_key(key, dim_);
    ++per_shape[{s.rows, s.cols}];
  }

  const int max_rows = dim_ == ctm::Dim::One ? 1 : block_size;
  for (int r = 1; r <= max_rows; ++r) {
    for (int c = 1; c <= block_size; ++c) {
      const int area = r * c;
      const int id = shape_id(r, c);
      const std::size_t n_codes = std::size_t{1} << area;
      const auto it = per_shape.find({r, c});
      const double seen = it == per_shape.end() ? 1.0 : static_cast<double>(it->second);
      const double fallback = max_bits + std::log2(static_cast<double>(n_codes) / seen);
      values_[id].assign(n_codes, fallback);
      present_[id].assign(n_codes, 0);
      if (it == per_shape.end()) continue;
      for (std::uint32_t code = 0; code < n_codes; ++code) {
        const std::string cells = code_cells(code, area);
        const auto bits = table.ctm_bits(dim_ == ctm::Dim::One ? cells : ctm::grid_key(r, c, cells));
        if (bits) {
          values_[id][code] = *bits;
          present_[id][code] = 1;
        }
      }
    }
  }
}

ComplexityEstimate Evaluator::bdm(const BitString& s) const {
  if (dim_ != ctm::Dim::One) throw TableError("strings need a 1D CTM table");
  if (s.empty()) throw DataError("cannot evaluate an empty string");
  for (auto v : s)
    if (v > 1) throw DataError("string is not binary");
  return estimate(*this, as_row(s), 1, block_size_);
}

ComplexityEstimate Evaluator::bdm(const Grid& g) const {
  if (dim_ != ctm::Dim::Two) throw TableError("grids need a 2D CTM table");
  if (g.empty()) throw DataError("cannot evaluate an empty grid");
  if (!g.is_binary()) throw DataError("grid is not binary");
  return estimate(*this, g, block_size_, block_size_);
}

BlockState::BlockState(const Evaluator& ev, const Grid& g) : ev_(&ev), grid_(g), string_mode_(false) {
  if (ev.dim() != ctm::Dim::Two) throw TableError("grids need a 2D CTM table");
  if (g.empty()) throw DataError("cannot evaluate an empty grid");
  if (!g.is_binary()) throw DataError("grid is not binary");
  build();
}

BlockState::BlockState(const Evaluator& ev, const BitString& s)
    : ev_(&ev), grid_(as_row(s)), string_mode_(true) {
  if (ev.dim() != ctm::Dim::One) throw TableError("strings need a 1D CTM table");
  if (s.empty()) throw DataError("cannot evaluate an empty string");
  if (!grid_.is_binary()) throw DataError("string is not binary");
  build();
}

void BlockState::build() {
  const int d = ev_->block_size();
  const int br = string_mode_ ? 1 : d;
  const auto blocks = partition(grid_.rows(), grid_.cols(), br, d);
  cell_block_.assign(grid_.size(), 0);
  cell_mask_.assign(grid_.size(), 0);
  block_shape_.resize(blocks.size());
  block_code_.resize(blocks.size());
  counts_.clear();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& rect = blocks[b];
    const int area = rect.rows * rect.cols;
    for (int i = 0; i < rect.rows; ++i)
      for (int j = 0; j < rect.cols; ++j) {
        const std::size_t cell = (rect.r0 + i) * grid_.cols() + rect.c0 + j;
        cell_block_[cell] = static_cast<std::uint32_t>(b);
        cell_mask_[cell] = 1U << (area - 1 - (i * rect.cols + j));
      }
    block_shape_[b] = ev_->shape_id(rect.rows, rect.cols);
    block_code_[b] = block_code(grid_, rect);
    ++counts_[hkey(block_shape_[b], block_code_[b])];
  }
}

double BlockState::term(std::uint64_t key, std::int64_t n) const {
  if (n <= 0) return 0.0;
  return ev_->block_bits(static_cast<int>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffULL)) +
         std::log2(static_cast<double>(n));
}

double BlockState::bits() const {
  std::vector<std::pair<std::uint64_t, std::int64_t>> items(counts_.begin(), counts_.end());
  std::sort(items.begin(), items.end());
  double bits = 0.0;
  for (const auto& [key, n] : items) bits += term(key, n);
  return bits;
}

double BlockState::coverage() const {
  std::size_t found = 0;
  for (std::size_t b = 0; b < block_code_.size(); ++b) found += ev_->in_table(block_shape_[b], block_code_[b]);
  return static_cast<double>(found) / static_cast<double>(block_code_.size());
}

double BlockState::flip_delta(std::span<const std::size_t> cells) const {
  // New codes of the touched blocks.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> touched;  // block, new code
  for (std::size_t cell : cells) {
    if (cell >= grid_.size()) throw UsageError("cell index out of range");
    const std::uint32_t b = cell_block_[cell];
    auto it = std::find_if(touched.begin(), touched.end(), [b](const auto& p) { return p.first == b; });
    if (it == touched.end()) touched.emplace_back(b, block_code_[b] ^ cell_mask_[cell]);
    else it->second ^= cell_mask_[cell];
  }
  std::vector<std::pair<std::uint64_t, std::int64_t>> changes;
  auto bump = [&changes](std::uint64_t key, std::int64_t d) {
    for (auto& c : changes)
      if (c.first == key) {
        c.second += d;
        return;
      }
    changes.emplace_back(key, d);
  };
  for (const auto& [b, code] : touched) {
    bump(hkey(block_shape_[b], block_code_[b]), -1);
    bump(hkey(block_shape_[b], code), +1);
  }
  std::sort(changes.begin(), changes.end());
  double delta = 0.0;
  for (const auto& [key, d] : changes) {
    if (d == 0) continue;
    const auto it = counts_.find(key);
    const std::int64_t n = it == counts_.end() ? 0 : it->second;
    delta += term(key, n + d) - term(key, n);
  }
  return delta;
}

void BlockState::flip(std::span<const std::size_t> cells) {
  for (std::size_t cell : cells) {
    if (cell >= grid_.size()) throw UsageError("cell index out of range");
    const std::uint32_t b = cell_block_[cell];
    auto old_key = hkey(block_shape_[b], block_code_[b]);
    if (--counts_[old_key] == 0) counts_.erase(old_key);
    block_code_[b] ^= cell_mask_[cell];
    ++counts_[hkey(block_shape_[b], block_code_[b])];
    grid_.cells()[cell] ^= 1U;
  }
}

}  // namespace algodecon::bdm
