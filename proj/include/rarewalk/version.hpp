#pragma once

namespace rarewalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rarewalk
