#pragma once

namespace dnls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dnls
