#pragma once

namespace enscon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace enscon
