#pragma once

namespace bwbforge {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace bwbforge
