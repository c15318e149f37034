#pragma once

namespace zgb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zgb
