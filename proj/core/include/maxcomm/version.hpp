#pragma once

namespace maxcomm {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace maxcomm
