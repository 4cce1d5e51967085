#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace wshed;
using wshed::testing::as_set;
using wshed::testing::brute_upstream;
using wshed::testing::Fixture;
using wshed::testing::path_raw;
using wshed::testing::random_raw_tree;
using wshed::testing::strip_fixture;
using wshed::testing::synthetic_fixture;

namespace {

std::set<Cell> brute_watershed(const Fixture& fx, const std::vector<std::size_t>& upstream) {
  std::set<Cell> out;
  for (std::size_t w : upstream)
    for (const Cell& c : fx.catchments[w].cells()) out.insert(c);
  return out;
}

void check_all_vertices(const Fixture& fx, int b) {
  const auto up = brute_upstream(fx.tree);
  const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, b).index;
  for (std::size_t v = 0; v < fx.tree.size(); ++v) {
    CAPTURE(v);
    const WatershedResult r = stitch_watershed(index, fx.tree.id(v));
    REQUIRE(as_set(r.cells.cells()) == brute_watershed(fx, up[v]));
    REQUIRE(r.cells.owner() == fx.tree.id(v));

    const auto slabs = stitched_slabs(index, v);
    REQUIRE(slabs.size() == r.merged_polygons);
    REQUIRE(slabs.front() == v);
    std::size_t slab_area = 0;
    std::uint64_t slab_nodes = 0;
    for (std::size_t s : slabs) {
      slab_area += index.vertex(s).slab.area();
      slab_nodes += index.vertex(s).slab_nodes;
    }
    REQUIRE(slab_area == r.cells.area());
    REQUIRE(slab_nodes == r.merged_nodes);
    REQUIRE(r.boundary == trace_boundary(r.cells));

    // Never more slabs than catchments; as many only when no touched slab
    // holds more than one catchment.
    REQUIRE(r.merged_polygons <= up[v].size());
    bool singletons = true;
    for (std::size_t s : slabs) singletons &= index.vertex(s).slab.area() == fx.catchments[s].area();
    REQUIRE((r.merged_polygons == up[v].size()) == singletons);

    for (std::size_t w : index.frontier(v)) REQUIRE(index.vertex(w).level >= index.vertex(v).level);

    const QueryCost cost = query_cost(index, v);
    REQUIRE(cost.polygons == r.merged_polygons);
    REQUIRE(cost.nodes == r.merged_nodes);
  }
}

}  // namespace

TEST_CASE("path of four") {
  const Fixture fx = strip_fixture(normalize(path_raw(4)));
  const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, 2).index;
  auto idx = [&](std::uint64_t id) { return index.index(ReachId{id}); };

  const WatershedResult a = stitch_watershed(index, ReachId{2});
  CHECK(a.merged_polygons == 2);
  CHECK(a.merged_nodes == index.vertex(idx(2)).slab_nodes + index.vertex(idx(3)).slab_nodes);
  CHECK(stitched_slabs(index, idx(2)) == std::vector<std::size_t>{idx(2), idx(3)});
  std::set<Cell> expect;
  for (std::uint64_t id : {2, 3, 4})
    for (const Cell& c : fx.catchments[fx.tree.index(ReachId{id})].cells()) expect.insert(c);
  CHECK(as_set(a.cells.cells()) == expect);
  CHECK(query_cost(index, ReachId{2}) == QueryCost{2, a.merged_nodes});

  const WatershedResult leaf = stitch_watershed(index, ReachId{4});
  CHECK(leaf.merged_polygons == 1);
  CHECK(leaf.cells.same_cells(fx.catchments[fx.tree.index(ReachId{4})]));
  CHECK(query_cost(index, ReachId{4}) == QueryCost{1, index.vertex(idx(4)).slab_nodes});

  const WatershedResult root = stitch_watershed(index, ReachId{1});
  CHECK(root.merged_polygons == 1);
  CHECK(root.cells.area() == 1 + 2 + 3 + 1);

  CHECK_THROWS_AS(stitch_watershed(index, ReachId{99}), Error);
  CHECK_THROWS_AS(query_cost(index, ReachId{99}), Error);
}

TEST_CASE("root stitches its frontier past the top slab") {
  // Height 4 at b = 2: top slab covers delta 0..3 and the leaf at delta 4
  // comes in through the frontier.
  const Fixture fx = strip_fixture(normalize(path_raw(5)));
  const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, 2).index;
  CHECK(index.top_level() == 2);
  const WatershedResult root = stitch_watershed(index, ReachId{1});
  CHECK(root.merged_polygons == 1 + index.frontier(fx.tree.root()).size());
  CHECK(root.merged_polygons == 2);
  std::size_t total = 0;
  for (const CellCatchment& c : fx.catchments.all()) total += c.area();
  CHECK(root.cells.area() == total);
}

TEST_CASE("stitching matches reachability on random trees") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 2 + (seed * 211) % 900;
    const Fixture fx = strip_fixture(normalize(random_raw_tree(n, seed + 100, seed % 2 == 0 ? 2 : 0)));
    for (int b : {2, 3, 4, 6}) {
      CAPTURE(seed);
      CAPTURE(b);
      check_all_vertices(fx, b);
    }
  }
}

TEST_CASE("stitching matches reachability on synthetic networks") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Fixture fx = synthetic_fixture(600, seed);
    for (int b : {2, 4}) check_all_vertices(fx, b);
  }
}

TEST_CASE("query cost grows slowly with network size") {
  // Combs: a main stem where every reach also takes one headwater tributary,
  // so the number of leaves per slab stays fixed while n grows. The most
  // expensive query should follow a + c log n.
  std::vector<double> logn;
  std::vector<double> worst;
  for (std::uint64_t stem : {64u, 256u, 1024u, 4096u}) {
    RawNetwork raw;
    for (std::uint64_t i = 0; i < stem; ++i) {
      const std::uint64_t s = 2 * i + 1;
      raw.reaches.push_back(RawReach{ReachId{s}, i == 0 ? std::nullopt : std::optional(ReachId{s - 2}),
                                     Divergence::Major});
      raw.reaches.push_back(RawReach{ReachId{s + 1}, ReachId{s}, Divergence::Major});
    }
    const Fixture fx = strip_fixture(normalize(raw));
    const LrgIndex index = build_lrg(fx.tree, fx.labels, fx.catchments, 2).index;
    std::uint64_t most = 0;
    for (std::size_t v = 0; v < fx.tree.size(); ++v)
      most = std::max(most, query_cost(index, v).polygons);
    logn.push_back(std::log2(static_cast<double>(fx.tree.size())));
    worst.push_back(static_cast<double>(most));
  }
  // Least squares line through (log n, worst).
  const double k = static_cast<double>(worst.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < worst.size(); ++i) {
    sx += logn[i];
    sy += worst[i];
    sxx += logn[i] * logn[i];
    sxy += logn[i] * worst[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / k;
  CHECK(slope > 0.0);
  CHECK(slope < 8.0);
  for (std::size_t i = 0; i < worst.size(); ++i)
    CHECK(std::abs(worst[i] - (intercept + slope * logn[i])) <= 0.25 * worst[i]);
  // Against n itself the growth is far from linear.
  CHECK(worst.back() / worst.front() < 64.0 / 8.0);
}
