#pragma once

namespace collapse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace collapse
