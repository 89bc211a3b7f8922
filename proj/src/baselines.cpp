#include "algodecon/baselines.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "algodecon/error.hpp"

namespace algodecon::baselines {

namespace {

template <class Map>
double entropy_of(const Map& counts, double total) {
  double h = 0.0;
  for (const auto& [key, n] : counts) {
    const double p = static_cast<double>(n) / total;
    h -= p * std::log2(p);
  }
  return h;
}

// Block histogram keyed by (rows, cols, code).
std::map<std::tuple<int, int, std::uint32_t>, std::size_t> grid_blocks(const Grid& g, int d) {
  std::map<std::tuple<int, int, std::uint32_t>, std::size_t> counts;
  for (std::size_t r = 0; r < g.rows(); r += d)
    for (std::size_t c = 0; c < g.cols(); c += d) {
      const int br = static_cast<int>(std::min<std::size_t>(d, g.rows() - r));
      const int bc = static_cast<int>(std::min<std::size_t>(d, g.cols() - c));
      std::uint32_t code = 0;
      for (int i = 0; i < br; ++i)
        for (int j = 0; j < bc; ++j) code = (code << 1) | (g(r + i, c + j) & 1U);
      ++counts[{br, bc, code}];
    }
  return counts;
}

}  // namespace

double shannon_entropy(Symbols seq, int block_size) {
  if (seq.empty()) throw DataError("entropy of an empty sequence");
  if (block_size < 1) throw UsageError("block size must be at least 1");
  const std::size_t d = static_cast<std::size_t>(block_size);
  if (seq.size() < d) throw DataError("sequence shorter than one block");
  std::map<std::vector<std::uint8_t>, std::size_t> counts;
  std::size_t blocks = 0;
  for (std::size_t i = 0; i + d <= seq.size(); i += d, ++blocks)
    ++counts[std::vector<std::uint8_t>(seq.begin() + i, seq.begin() + i + d)];
  return entropy_of(counts, static_cast<double>(blocks));
}

double grid_block_entropy(const Grid& g, int block_size) {
  if (g.empty()) throw DataError("entropy of an empty grid");
  if (block_size < 1 || block_size > 5) throw UsageError("grid block size must be in [1, 5]");
  const auto counts = grid_blocks(g, block_size);
  std::size_t total = 0;
  for (const auto& [k, n] : counts) total += n;
  return entropy_of(counts, static_cast<double>(total));
}

std::size_t Compressor::compressed_size(Symbols data) const {
  uLongf out_len = compressBound(static_cast<uLong>(data.size()));
  std::vector<Bytef> out(out_len);
  const int rc = compress2(out.data(), &out_len, data.data(), static_cast<uLong>(data.size()), level);
  if (rc != Z_OK) throw Error("zlib compression failed");
  return out_len;
}

std::string Compressor::describe() const { return "zlib-deflate level=" + std::to_string(level) + " zlib=" + zlibVersion(); }

double ncd(Symbols x, Symbols y, const Compressor& z) {
  if (x.empty() || y.empty()) throw DataError("NCD of an empty input");
  std::vector<std::uint8_t> xy(x.begin(), x.end());
  xy.insert(xy.end(), y.begin(), y.end());
  const double cx = static_cast<double>(z.compressed_size(x));
  const double cy = static_cast<double>(z.compressed_size(y));
  const double cxy = static_cast<double>(z.compressed_size(xy));
  return (cxy - std::min(cx, cy)) / std::max(cx, cy);
}

double mutual_information(Symbols x, Symbols y) {
  if (x.size() != y.size()) throw DataError("mutual information needs equal-length sequences");
  if (x.empty()) throw DataError("mutual information of empty sequences");
  std::map<std::uint8_t, std::size_t> px, py;
  std::map<std::pair<std::uint8_t, std::uint8_t>, std::size_t> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++px[x[i]];
    ++py[y[i]];
    ++pxy[{x[i], y[i]}];
  }
  const double n = static_cast<double>(x.size());
  const double mi = entropy_of(px, n) + entropy_of(py, n) - entropy_of(pxy, n);
  return std::max(0.0, mi);
}

const char* row_method_name(RowMethod m) {
  switch (m) {
    case RowMethod::BdmDifference: return "bdm";
    case RowMethod::MutualInformation: return "mi";
    case RowMethod::Ncd: return "ncd";
  }
  return "?";
}

RowMethod parse_row_method(const std::string& s) {
  if (s == "bdm") return RowMethod::BdmDifference;
  if (s == "mi") return RowMethod::MutualInformation;
  if (s == "ncd") return RowMethod::Ncd;
  throw UsageError("row method must be bdm, mi or ncd");
}

std::vector<std::vector<double>> row_window_scan(const Grid& g, RowMethod method, const RowScan& scan,
                                                 const bdm::Evaluator* ev) {
  if (scan.left_width < 1 || scan.right_width < 1) throw UsageError("window widths must be at least 1");
  if (scan.stride < 0) throw UsageError("stride must be nonnegative");
  const std::size_t lw = static_cast<std::size_t>(scan.left_width);
  const std::size_t rw = static_cast<std::size_t>(scan.right_width);
  const std::size_t stride = scan.stride == 0 ? lw : static_cast<std::size_t>(scan.stride);
  if (g.cols() < lw + rw) throw DataError("row shorter than the two windows");
  if (method == RowMethod::BdmDifference && (!ev || ev->dim() != ctm::Dim::One))
    throw TableError("BDM row scan needs a 1D CTM table");
  const Compressor z;
  std::vector<std::vector<double>> out(g.rows());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    const std::uint8_t* row = g.cells().data() + r * g.cols();
    for (std::size_t m = 0; m + lw + rw <= g.cols(); m += stride) {
      Symbols left(row + m, lw), right(row + m + lw, rw);
      double v = 0.0;
      switch (method) {
        case RowMethod::BdmDifference:
          v = std::abs(ev->bdm(BitString(left.begin(), left.end())).bits -
                       ev->bdm(BitString(right.begin(), right.end())).bits);
          break;
        case RowMethod::MutualInformation: {
          const std::size_t n = std::min(lw, rw);  // unequal windows: compare the common prefix
          v = mutual_information(left.first(n), right.first(n));
          break;
        }
        case RowMethod::Ncd: v = ncd(left, right, z); break;
      }
      out[r].push_back(v);
    }
  }
  return out;
}

std::size_t distinct_values(const std::vector<std::vector<double>>& scores) {
  std::set<long long> seen;
  for (const auto& row : scores)
    for (double v : row) seen.insert(std::llround(v * 1e9));
  return seen.size();
}

perturb::Footprint entropy_footprint(const Grid& g, int block_size, std::optional<double> tau) {
  if (g.empty()) throw DataError("empty grid");
  if (!g.is_binary()) throw DataError("grid is not binary");
  perturb::Footprint fp;
  fp.rows = g.rows();
  fp.cols = g.cols();
  fp.base_bits = grid_block_entropy(g, block_size);
  fp.contribution.resize(g.size());
  Grid work = g;
  for (std::size_t c = 0; c < g.size(); ++c) {
    work.cells()[c] ^= 1U;
    fp.contribution[c] = fp.base_bits - grid_block_entropy(work, block_size);
    work.cells()[c] ^= 1U;
  }
  fp.reclassify(tau ? *tau : perturb::default_tau(fp.contribution));
  return fp;
}

}  // namespace algodecon::baselines
