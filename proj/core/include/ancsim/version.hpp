#pragma once

namespace ancsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ancsim
