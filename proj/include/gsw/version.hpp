#pragma once

namespace gsw {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gsw
