#pragma once

namespace claw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace claw
