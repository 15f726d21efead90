#pragma once

namespace hfl {

inline constexpr const char *version = "0.1.0";

// bumped when the structured file formats change incompatibly
inline constexpr int schema_version = 1;

} // namespace hfl
