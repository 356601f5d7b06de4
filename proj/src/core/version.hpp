#pragma once

namespace repi {

inline constexpr const char* kToolVersion = "repi 0.1.0";

}  // namespace repi
