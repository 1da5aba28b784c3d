#pragma once

namespace naq {

inline constexpr const char* kEngineName = "naq";
inline constexpr const char* kEngineVersion = "0.1.0";

} // namespace naq
