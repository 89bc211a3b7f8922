#include <filesystem>

#include "algodecon/error.hpp"
#include "algodecon/experiments.hpp"
#include "algodecon/io.hpp"
#include "support.hpp"

using namespace algodecon;
using namespace algodecon::experiments;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("algodecon_exp_" + name);
  fs::remove_all(p);
  return p;
}

std::string table_1d_file() {
  const auto p = fs::path(support::table_dir()) / "ctm-3-2-1d.tbl";
  return p.string();
}

}  // namespace

TEST_CASE("experiment ids", "[experiments]") {
  const auto& ids = experiment_ids();
  CHECK(ids.size() == 6);
  CHECK(std::find(ids.begin(), ids.end(), "fig1-string") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "fig5-robustness") != ids.end());
}

TEST_CASE("config round-trips through key=value text", "[experiments]") {
  ExperimentConfig cfg;
  cfg.experiment = "fig3-graphs";
  cfg.seeds = {0, 1, 2, 7};
  cfg.policy = deconvolve::Policy::AlgebraicMin;
  cfg.connectors = 5;
  cfg.epsilon = "0.5";
  cfg.table_1d = "a.tbl";
  cfg.table_2d = "b.tbl";
  const auto back = ExperimentConfig::from_key_values(io::parse_key_values(io::format_key_values(cfg.to_key_values())));
  CHECK(back.to_key_values() == cfg.to_key_values());
  CHECK(back.seeds == cfg.seeds);
  CHECK(back.policy == cfg.policy);
}

TEST_CASE("config parsing errors", "[experiments]") {
  CHECK_THROWS_AS(ExperimentConfig::from_key_values({{"experiment", "fig1-string"}, {"bogus", "1"}}), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::from_key_values({{"experiment", "fig1-string"}, {"connectors", "x"}}), UsageError);
  const auto cfg = ExperimentConfig::from_key_values({{"experiment", "fig1-string"}, {"seeds", "3-5"}});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4, 5});

  ExperimentConfig bad;
  bad.experiment = "fig9";
  CHECK_THROWS_AS(run_experiment(bad), UsageError);
  ExperimentConfig missing;
  missing.experiment = "fig1-string";
  missing.table_1d = "/nonexistent/ctm.tbl";
  missing.out_dir = scratch("missing");
  CHECK_THROWS_AS(run_experiment(missing), TableError);
}

TEST_CASE("default seeds", "[experiments]") {
  ExperimentConfig cfg;
  cfg.experiment = "fig1-string";
  CHECK(cfg.effective_seeds().size() == 20);
  cfg.experiment = "fig5-robustness";
  CHECK(cfg.effective_seeds().size() == 10);
  cfg.seeds = {4};
  CHECK(cfg.effective_seeds() == std::vector<std::uint64_t>{4});
}

TEST_CASE("the reference string and its random-tail variants", "[experiments]") {
  const auto s = parse_bits(reference_string());
  CHECK(s.size() == 100);
  CHECK(fig1_string(0) == s);
  const auto v = fig1_string(4);
  CHECK(v.size() == 100);
  CHECK(std::equal(v.begin(), v.begin() + 52, s.begin()));
  CHECK(fig1_string(4) == v);
}

TEST_CASE("a manifest reproduces its run byte for byte", "[experiments][property]") {
  if (!fs::exists(table_1d_file())) SKIP("ctm-3-2-1d.tbl not found");
  ExperimentConfig cfg;
  cfg.experiment = "fig1-string";
  cfg.seeds = {0, 1};
  cfg.table_1d = table_1d_file();
  cfg.out_dir = scratch("first");
  cfg.workers = 1;
  const auto first = run_experiment(cfg);
  auto again = load_manifest(first.out_dir / "manifest.txt");
  again.out_dir = scratch("second");
  again.workers = 2;
  const auto second = run_experiment(again);
  REQUIRE(first.files == second.files);
  for (const auto& f : first.files) {
    if (f == "manifest.txt") continue;  // differs in out_dir and workers only
    CHECK(io::read_text(first.out_dir / f) == io::read_text(second.out_dir / f));
  }
  CHECK(first.summary == second.summary);

  // a manifest whose checksum no longer matches the table is rejected
  auto text = io::read_text(first.out_dir / "manifest.txt");
  const auto at = text.find("table_1d_checksum=");
  REQUIRE(at != std::string::npos);
  text.replace(at + 18, 8, "00000000");
  io::write_text(first.out_dir / "bad.txt", text);
  CHECK_THROWS_AS(load_manifest(first.out_dir / "bad.txt"), TableError);
  fs::remove_all(first.out_dir);
  fs::remove_all(second.out_dir);
}
