#pragma once

namespace ripsmap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ripsmap
