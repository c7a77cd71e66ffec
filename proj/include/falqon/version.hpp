#pragma once

namespace falqon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace falqon
