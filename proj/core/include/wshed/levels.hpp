#pragma once

#include <cstdint>

namespace wshed {

/// b^e, saturating at INT64_MAX.
std::int64_t saturating_pow(std::int64_t b, int e) noexcept;

/// Smallest L >= 0 with b^L >= height (0 for height <= 1). The index keeps
/// layers H_0..H_L.
int top_level_for(std::int64_t height, int b);

/// Layer that stores (and is searched for) a vertex at distance `delta` from
/// the root: the largest rf <= L with delta divisible by b^rf. The root
/// (delta 0) always maps to the top layer L.
int query_level(std::int64_t delta, int b, int top_level);

}  // namespace wshed
