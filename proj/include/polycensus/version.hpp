#pragma once

namespace polycensus {

inline constexpr const char* kVersion = "polycensus 1.0.0";

}  // namespace polycensus
