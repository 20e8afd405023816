#pragma once

namespace wold {

inline constexpr const char* kToolName = "wold";
inline constexpr const char* kVersion = "0.1.0";

} // namespace wold
