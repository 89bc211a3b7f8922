#pragma once

// Experiment harness: each experiment writes per-replicate CSVs, an
// aggregate CSV, a summary, optional SVG plots, and a manifest from which
// the run can be repeated byte for byte.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "algodecon/deconvolve.hpp"
#include "algodecon/io.hpp"

namespace algodecon::experiments {

const std::vector<std::string>& experiment_ids();

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::uint64_t> seeds;  // empty: 0..19 (0..9 for fig5-robustness)
  std::string table_1d;              // empty: $ALGODECON_TABLE_DIR/ctm-3-2-1d.tbl
  std::string table_2d;              // empty: $ALGODECON_TABLE_DIR/ctm-3-2-2d.tbl
  std::filesystem::path out_dir = "out";
  deconvolve::Policy policy = deconvolve::Policy::Literal;
  std::string epsilon = "auto";  // "auto" or a fixed nonnegative value
  double log_unit = 1.0;
  int string_block = 5;
  int grid_block = 3;
  int graph_block = 4;
  int connectors = 3;
  int ca_width = 100;
  int ca_steps = 99;
  int rule_a = 60;
  int rule_b = 110;
  std::string inter = "531441";  // rule index or "random"
  double fraction_min = 0.05;
  double fraction_max = 0.50;
  double fraction_step = 0.025;
  int window_left = 6;
  int window_right = 6;
  int window_stride = 0;
  double min_region_fraction = 0.01;
  int workers = 0;  // 0: hardware concurrency
  bool plots = true;

  io::KeyValues to_key_values() const;
  static ExperimentConfig from_key_values(const io::KeyValues& kv);
  std::vector<std::uint64_t> effective_seeds() const;
  std::string table_1d_path() const;
  std::string table_2d_path() const;
};

struct ExperimentResult {
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> files;  // relative to out_dir, in write order
  std::map<std::string, double> summary;
};

/// Runs one experiment and writes its files under cfg.out_dir. The manifest
/// (manifest.txt) is the configuration plus table checksums and the code
/// version; loading it with load_manifest reproduces the run.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentConfig load_manifest(const std::filesystem::path& path);

/// The 100-bit reference example: "01" x 26 followed by a 48-bit irregular tail.
const std::string& reference_string();
/// seed 0: the reference string; otherwise the same periodic prefix with a
/// seeded random 48-bit tail.
BitString fig1_string(std::uint64_t seed);

/// Components of at least `min_fraction` of the grid's cells.
std::size_t count_regions(const deconvolve::GridSegmentation& seg, double min_fraction);

}  // namespace algodecon::experiments
