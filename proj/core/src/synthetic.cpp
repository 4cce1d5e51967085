#include "wshed/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

#include "wshed/error.hpp"
#include "wshed/mns.hpp"

namespace wshed {

namespace {

// Distribution helpers with a fixed algorithm, so a seed yields the same
// network with every standard library.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw_weighted(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double x = unit(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

std::int64_t floor_half(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

void gilbert(std::vector<Cell>& out, std::int64_t x, std::int64_t y, std::int64_t ax,
             std::int64_t ay, std::int64_t bx, std::int64_t by) {
  const std::int64_t w = std::llabs(ax + ay);
  const std::int64_t h = std::llabs(bx + by);
  const int dax = sgn(ax), day = sgn(ay);
  const int dbx = sgn(bx), dby = sgn(by);

  if (h == 1) {
    for (std::int64_t i = 0; i < w; ++i, x += dax, y += day)
      out.push_back(Cell{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    return;
  }
  if (w == 1) {
    for (std::int64_t i = 0; i < h; ++i, x += dbx, y += dby)
      out.push_back(Cell{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    return;
  }

  std::int64_t ax2 = floor_half(ax), ay2 = floor_half(ay);
  std::int64_t bx2 = floor_half(bx), by2 = floor_half(by);
  const std::int64_t w2 = std::llabs(ax2 + ay2);
  const std::int64_t h2 = std::llabs(bx2 + by2);

  if (2 * w > 3 * h) {
    if ((w2 % 2) != 0 && w > 2) {
      ax2 += dax;
      ay2 += day;
    }
    gilbert(out, x, y, ax2, ay2, bx, by);
    gilbert(out, x + ax2, y + ay2, ax - ax2, ay - ay2, bx, by);
  } else {
    if ((h2 % 2) != 0 && h > 2) {
      bx2 += dbx;
      by2 += dby;
    }
    gilbert(out, x, y, bx2, by2, ax2, ay2);
    gilbert(out, x + bx2, y + by2, ax, ay, bx - bx2, by - by2);
    gilbert(out, x + (ax - dax) + (bx2 - dbx), y + (ay - day) + (by2 - dby), -bx2, -by2,
            -(ax - ax2), -(ay - ay2));
  }
}

bool adjacent(const Cell& a, const Cell& b) {
  return std::abs(a.col - b.col) + std::abs(a.row - b.row) == 1;
}

}  // namespace

std::vector<Cell> hilbert_order(std::int32_t width, std::int32_t height) {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  if (width >= height)
    gilbert(out, 0, 0, width, 0, 0, height);
  else
    gilbert(out, 0, 0, 0, width, height, 0);
  return out;
}

SyntheticNetwork generate(const SyntheticSpec& spec) {
  if (spec.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (spec.width <= 0 || spec.height <= 0)
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  const auto cells_total =
      static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);
  if (cells_total < spec.n) {
    std::ostringstream os;
    os << "grid " << spec.width << 'x' << spec.height << " has " << cells_total
       << " cells, fewer than n = " << spec.n;
    throw Error(ErrorCode::GridTooSmall, os.str());
  }
  if (spec.branching.empty() ||
      std::any_of(spec.branching.begin(), spec.branching.end(),
                  [](double w) { return !(w >= 0.0) || !std::isfinite(w); }))
    throw Error(ErrorCode::InvalidArgument, "branching weights must be finite and non-negative");
  std::vector<double> cumulative(spec.branching.size());
  std::partial_sum(spec.branching.begin(), spec.branching.end(), cumulative.begin());
  if (!(cumulative.back() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "branching weights sum to zero");

  std::mt19937_64 rng(spec.seed);
  const std::size_t n = spec.n;

  // Creation index i becomes reach id i + 1; parent[0] is the outlet.
  std::vector<std::size_t> parent(n, 0);
  std::vector<std::uint32_t> child_count(n, 0);
  std::vector<std::size_t> open{0};
  std::size_t created = 1;
  auto add_child = [&](std::size_t p) {
    parent[created] = p;
    ++child_count[p];
    open.push_back(created);
    ++created;
  };
  while (created < n) {
    if (open.empty()) {
      std::size_t leaf = below(rng, created);
      while (child_count[leaf] != 0) leaf = below(rng, created);
      add_child(leaf);
      continue;
    }
    const std::size_t pick = below(rng, open.size());
    const std::size_t v = open[pick];
    open[pick] = open.back();
    open.pop_back();
    const std::size_t k = draw_weighted(rng, cumulative);
    for (std::size_t c = 0; c < k && created < n; ++c) add_child(v);
  }

  RawNetwork raw;
  raw.reaches.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw.reaches.push_back(RawReach{ReachId{i + 1},
                                   i == 0 ? std::nullopt
                                          : std::optional<ReachId>(ReachId{parent[i] + 1}),
                                   Divergence::Major});
  }
  StreamTree tree = normalize(raw);
  const MnsLabels labels = mns_label(tree);

  // Run lengths: one cell each plus a random share of the surplus.
  const std::vector<Cell> curve = hilbert_order(spec.width, spec.height);
  const std::size_t surplus = cells_total - n;
  std::vector<double> share(n);
  for (double& s : share) s = 0.5 + unit(rng);
  const double share_sum = std::accumulate(share.begin(), share.end(), 0.0);
  std::vector<std::size_t> bounds(n + 1, 0);
  {
    std::vector<std::size_t> length(n, 1);
    std::size_t used = n;
    for (std::size_t k = 0; k < n; ++k) {
      const auto extra = static_cast<std::size_t>(std::floor(static_cast<double>(surplus) * share[k] / share_sum));
      length[k] += extra;
      used += extra;
    }
    for (std::size_t k = 0; used < cells_total; k = (k + 1) % n, ++used) ++length[k];
    for (std::size_t k = 0; k < n; ++k) bounds[k + 1] = bounds[k] + length[k];
  }
  // A run that spans a diagonal step of the curve could split into two
  // pieces; move the run's end back to the step when possible.
  for (std::size_t p = 1; p < curve.size(); ++p) {
    if (adjacent(curve[p - 1], curve[p])) continue;
    auto it = std::upper_bound(bounds.begin(), bounds.end(), p);
    const auto j = static_cast<std::size_t>(it - bounds.begin()) - 1;  // bounds[j] <= p
    if (bounds[j] == p) continue;
    if (j + 1 < n) bounds[j + 1] = p;
  }

  GridRaster raster(spec.width, spec.height);
  const auto order = labels.preorder();
  for (std::size_t k = 0; k < n; ++k) {
    const ReachId owner = tree.id(order[k]);
    for (std::size_t p = bounds[k]; p < bounds[k + 1]; ++p)
      raster.assign(curve[p].col, curve[p].row, owner);
  }
  return SyntheticNetwork{std::move(tree), std::move(raster)};
}

}  // namespace wshed
