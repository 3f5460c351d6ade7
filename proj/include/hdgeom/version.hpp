#pragma once

namespace hdgeom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hdgeom
