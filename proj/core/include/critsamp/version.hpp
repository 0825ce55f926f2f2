#pragma once

namespace critsamp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace critsamp
