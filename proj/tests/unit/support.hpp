#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "algodecon/ctm.hpp"

namespace support {

using algodecon::ctm::CtmTable;
using algodecon::ctm::Dim;
using algodecon::ctm::MachineClass;

inline const CtmTable& table_2_1d() {
  static const CtmTable t = algodecon::ctm::build_table(MachineClass{2, 2, Dim::One}, 107, 1);
  return t;
}

// (3,2,1D) builds in about a second, so tests make their own.
inline const CtmTable& table_3_1d() {
  static const CtmTable t = algodecon::ctm::build_table(MachineClass{3, 2, Dim::One}, 107, 2);
  return t;
}

inline std::string table_dir() {
  const char* env = std::getenv("ALGODECON_TABLE_DIR");
  return env && *env ? env : "tables";
}

// (3,2,2D) is built once by the ctest fixture.
inline const CtmTable* table_3_2d() {
  static const CtmTable* t = [] () -> const CtmTable* {
    const auto path = std::filesystem::path(table_dir()) / "ctm-3-2-2d.tbl";
    if (!std::filesystem::exists(path)) return nullptr;
    return new CtmTable(algodecon::ctm::load_table_file(path.string()));
  }();
  return t;
}

#define REQUIRE_TABLE_2D()                                                   \
  const auto* table2d_ptr = support::table_3_2d();                           \
  if (!table2d_ptr) SKIP("ctm-3-2-2d.tbl not found in ALGODECON_TABLE_DIR"); \
  const auto& table2d = *table2d_ptr

}  // namespace support
