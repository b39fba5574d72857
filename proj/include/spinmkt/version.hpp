#pragma once

namespace spinmkt {

inline constexpr const char* kToolName = "spinmarket";
inline constexpr const char* kToolVersion = "1.0.0";

// Pinned generator identity; bump the version if the byte stream ever changes.
inline constexpr const char* kGeneratorName = "xoshiro256++";
inline constexpr const char* kGeneratorVersion = "1.0";

}  // namespace spinmkt
