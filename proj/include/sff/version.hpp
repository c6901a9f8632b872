#pragma once

namespace sff {

inline constexpr const char* kLibraryVersion = "0.1.0";

} // namespace sff
