#pragma once

namespace shrinkage {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace shrinkage
