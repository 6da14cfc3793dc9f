#pragma once

namespace rigidkit {
inline constexpr const char* kVersion = "0.1.0";
}
