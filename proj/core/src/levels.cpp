#include "wshed/levels.hpp"

#include <limits>
#include <sstream>

#include "wshed/error.hpp"

namespace wshed {

namespace {

void require_base(int b) {
  if (b < 2) {
    std::ostringstream os;
    os << "base b = " << b << " must be at least 2";
    throw Error(ErrorCode::InvalidBase, os.str());
  }
}

}  // namespace

std::int64_t saturating_pow(std::int64_t b, int e) noexcept {
  constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max();
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > cap / b) return cap;
    out *= b;
  }
  return out;
}

int top_level_for(std::int64_t height, int b) {
  require_base(b);
  int level = 0;
  std::int64_t span = 1;
  while (span < height) {
    span = (span > std::numeric_limits<std::int64_t>::max() / b)
               ? std::numeric_limits<std::int64_t>::max()
               : span * b;
    ++level;
  }
  return level;
}

int query_level(std::int64_t delta, int b, int top_level) {
  require_base(b);
  if (delta < 0 || top_level < 0)
    throw Error(ErrorCode::InvalidArgument, "delta and top level must be non-negative");
  if (delta == 0) return top_level;
  int level = 0;
  while (level < top_level && delta % b == 0) {
    delta /= b;
    ++level;
  }
  return level;
}

}  // namespace wshed
