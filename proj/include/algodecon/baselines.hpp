#pragma once

// Classical-information and compression baselines: block Shannon entropy,
// normalized compression distance, mutual information, and the sliding
// row-window comparisons used against BDM.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algodecon/bdm.hpp"
#include "algodecon/grid.hpp"
#include "algodecon/perturb.hpp"

namespace algodecon::baselines {

using Symbols = std::span<const std::uint8_t>;

/// Entropy in bits of the empirical distribution of non-overlapping blocks
/// of `block_size` symbols; a trailing partial block is ignored.
double shannon_entropy(Symbols seq, int block_size = 1);

/// Entropy of the d x d block distribution of a grid (partial boundary
/// blocks are kept, keyed by their shape).
double grid_block_entropy(const Grid& g, int block_size);

/// zlib deflate at a fixed level; every NCD value is measured with it.
struct Compressor {
  int level = 9;
  std::size_t compressed_size(Symbols data) const;
  std::string describe() const;
};

/// (C(xy) - min(C(x), C(y))) / max(C(x), C(y)), sizes in bytes.
double ncd(Symbols x, Symbols y, const Compressor& z = {});

/// H(x) + H(y) - H(x, y) over the empirical joint distribution.
double mutual_information(Symbols x, Symbols y);

enum class RowMethod { BdmDifference, MutualInformation, Ncd };
const char* row_method_name(RowMethod m);
RowMethod parse_row_method(const std::string& s);

struct RowScan {
  int left_width = 6;
  int right_width = 6;
  int stride = 0;  // 0 = left_width (non-overlapping windows)
};

/// For every row and every window offset m (step `stride`), compares the
/// left window [m, m+left) with the right window [m+left, m+left+right).
/// BDM difference needs a 1D evaluator; the other methods ignore `ev`.
std::vector<std::vector<double>> row_window_scan(const Grid& g, RowMethod method, const RowScan& scan,
                                                 const bdm::Evaluator* ev = nullptr);

/// Number of distinct values (after rounding to 1e-9) across all rows.
std::size_t distinct_values(const std::vector<std::vector<double>>& scores);

/// Per-cell change of the grid's block entropy under a single flip,
/// classified like a BDM footprint.
perturb::Footprint entropy_footprint(const Grid& g, int block_size, std::optional<double> tau = std::nullopt);

}  // namespace algodecon::baselines
