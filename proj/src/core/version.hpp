#pragma once

namespace specrisk {

inline constexpr const char* kToolName = "specrisk";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace specrisk
