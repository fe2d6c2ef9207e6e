#pragma once

namespace ostbc {

inline constexpr const char* version = "0.1.0";

} // namespace ostbc
