// version.hpp — version and build reference embedded in all outputs
#pragma once

#include <string_view>

namespace thermo {

inline constexpr std::string_view kVersion = "0.1.0";

#ifdef THERMO_BUILD_REF
inline constexpr std::string_view kBuildRef = THERMO_BUILD_REF;
#else
inline constexpr std::string_view kBuildRef = "unknown";
#endif

} // namespace thermo
