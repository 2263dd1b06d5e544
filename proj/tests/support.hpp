#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "vtt/dsl.hpp"
#include "vtt/error.hpp"
#include "vtt/registry.hpp"

namespace vtt::test {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Registry compile_seed() { return compile(parse_document(read_text(VTT_SEED_FILE), VTT_SEED_FILE)); }

inline const Registry& seed() {
  static const Registry reg = compile_seed();
  return reg;
}

// Seed plus the small property-test schemas.
inline const Registry& fixtures() {
  static const Registry reg =
      compile(parse_document(read_text(VTT_FIXTURE_FILE), VTT_FIXTURE_FILE), &seed());
  return reg;
}

// Code of the vtt::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace vtt::test

#define EXPECT_VTT_ERROR(stmt, ec) EXPECT_EQ(::vtt::test::error_of([&] { (void)(stmt); }), (ec))
