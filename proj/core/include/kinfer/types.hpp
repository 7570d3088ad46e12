#pragma once

#include <cstddef>
#include <cstdint>

namespace kinfer {

// Dense 1-based person index. 0 is the invalid/unknown sentinel.
using person_t = std::uint32_t;

// Default per-cell retention limit for path-recording matrix products.
inline constexpr std::size_t kDefaultPathCap = 16;

}  // namespace kinfer
