#pragma once

#include <filesystem>
#include <string>

#include "zgb/ingestion.hpp"
#include "zgb/zero_finder.hpp"

namespace zgb::testing {

inline std::string data_path(const std::string& name) { return std::string(ZGB_TEST_DATA_DIR) + "/" + name; }

// 649 ordinates up to 1000, nine decimals, computed independently at 25 digits.
inline std::string reference_1000() { return data_path("zeros_to_1000.txt"); }

inline const ZeroTable& table_100() {
  static const ZeroTable t = build_table(100.0);
  return t;
}

inline const ZeroTable& table_1000() {
  static const ZeroTable t = build_table(1000.0);
  return t;
}

inline const ReferenceTableFile& reference_file() {
  static const ReferenceTableFile f = read_reference_file(reference_1000());
  return f;
}

// Fresh path under the system temp directory.
inline std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "zgb_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline constexpr double kGamma1 = 14.134725141734693790;
inline constexpr double kGamma2 = 21.022039638771555;

}  // namespace zgb::testing
