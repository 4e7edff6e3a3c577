#pragma once

namespace trisplit {
inline constexpr const char* kVersion = "0.1.0";
}
