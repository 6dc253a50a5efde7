// version.hpp — Library version string
#pragma once

namespace liouspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace liouspec
