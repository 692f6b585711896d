#pragma once

namespace zenolz {

inline constexpr const char* kToolName = "zenolz";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace zenolz
