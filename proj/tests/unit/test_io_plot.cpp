#include <filesystem>
#include <sstream>

#include "algodecon/error.hpp"
#include "algodecon/io.hpp"
#include "algodecon/plot.hpp"
#include "support.hpp"

using namespace algodecon;

TEST_CASE("number formatting round-trips", "[io]") {
  CHECK(io::num(0.5) == "0.5");
  CHECK(io::num(3.0) == "3");
  for (double v : {1.0 / 3.0, -2.75e-7, 123456.789}) CHECK(std::stod(io::num(v)) == Catch::Approx(v).epsilon(1e-9));
}

TEST_CASE("bit strings and grids", "[io]") {
  CHECK(to_string(parse_bits("0110")) == "0110");
  CHECK_THROWS_AS(parse_bits("01a"), DataError);
  const auto g = Grid::from_rows({"010", "111"});
  CHECK(g.rows() == 2);
  CHECK(g(1, 2) == 1);
  CHECK(g.to_rows() == std::vector<std::string>{"010", "111"});
  CHECK_THROWS_AS(Grid::from_rows({"01", "1"}), DataError);

  const auto dir = std::filesystem::temp_directory_path() / "algodecon_io_test";
  std::filesystem::create_directories(dir);
  std::ostringstream os;
  io::write_grid(g, os);
  io::write_text(dir / "g.txt", os.str() + "\n");
  CHECK(io::read_grid(dir / "g.txt") == g);
  io::write_text(dir / "s.txt", "0101\n 11\n");
  CHECK(io::read_bits(dir / "s.txt") == parse_bits("010111"));
  CHECK_THROWS_AS(io::read_text(dir / "missing.txt"), DataError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV round-trip", "[io]") {
  io::Csv csv;
  csv.header = {"a", "b"};
  csv.rows = {{"1", "x"}, {"2", "y"}};
  const auto back = io::Csv::parse(csv.str());
  CHECK(back.header == csv.header);
  CHECK(back.rows == csv.rows);
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(back.column("c"), DataError);
  CHECK_THROWS_AS(io::Csv::parse("a,b\n1\n"), DataError);
}

TEST_CASE("key=value text", "[io]") {
  const auto kv = io::parse_key_values("# comment\nexperiment = fig1-string\nseeds=0-3\n\n");
  CHECK(kv.at("experiment") == "fig1-string");
  CHECK(kv.at("seeds") == "0-3");
  CHECK(io::parse_key_values(io::format_key_values(kv)) == kv);
  CHECK_THROWS_AS(io::parse_key_values("novalue\n"), DataError);
}

TEST_CASE("SVG plots", "[io]") {
  io::Csv csv;
  csv.header = {"x", "y", "mark"};
  for (int i = 0; i < 5; ++i) csv.rows.push_back({std::to_string(i), std::to_string(i * i), i == 2 ? "1" : "0"});

  plot::Options line;
  line.marker = "mark";
  line.title = "squares";
  const auto svg = plot::emit_plot(csv, plot::Kind::Line, line);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("squares") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  const auto scatter = plot::emit_plot(csv, plot::Kind::Scatter, {});
  CHECK(scatter.find("<circle") != std::string::npos);

  io::Csv cells;
  cells.header = {"row", "col", "class"};
  cells.rows = {{"0", "0", "negative"}, {"0", "1", "neutral"}, {"1", "0", "positive"}, {"1", "1", "neutral"}};
  plot::Options heat;
  heat.x = "col";
  heat.y = "row";
  heat.value = "class";
  const auto h = plot::emit_plot(cells, plot::Kind::Heatmap, heat);
  CHECK(h.find("<rect") != std::string::npos);

  heat.value.clear();
  CHECK_THROWS_AS(plot::emit_plot(cells, plot::Kind::Heatmap, heat), UsageError);
  CHECK_THROWS_AS(plot::parse_kind("pie"), UsageError);
  csv.rows[0][1] = "abc";
  CHECK_THROWS_AS(plot::emit_plot(csv, plot::Kind::Line, {}), DataError);
}
