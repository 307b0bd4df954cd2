#pragma once

namespace cspath {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cspath
