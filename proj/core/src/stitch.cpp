#include "wshed/stitch.hpp"

#include <span>

namespace wshed {

namespace {

template <typename Visit>
void walk_slabs(const LrgIndex& index, std::size_t v, Visit&& visit) {
  std::vector<std::size_t> stack{v};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    visit(u);
    const auto next = index.frontier(u);
    // Reverse push keeps the frontier in discovery order when popped.
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(*it);
  }
}

}  // namespace

std::vector<std::size_t> stitched_slabs(const LrgIndex& index, std::size_t v) {
  std::vector<std::size_t> out;
  walk_slabs(index, v, [&out](std::size_t u) { out.push_back(u); });
  return out;
}

WatershedResult stitch_watershed(const LrgIndex& index, ReachId v) {
  const std::size_t start = index.index(v);
  std::vector<const CellCatchment*> parts;
  std::uint64_t nodes = 0;
  walk_slabs(index, start, [&](std::size_t u) {
    parts.push_back(&index.vertex(u).slab);
    nodes += index.vertex(u).slab_nodes;
  });
  CellCatchment merged = dissolve(std::span<const CellCatchment* const>(parts));
  BoundaryPolygon boundary = trace_boundary(merged);
  return WatershedResult{std::move(boundary), std::move(merged), parts.size(), nodes};
}

QueryCost query_cost(const LrgIndex& index, std::size_t v) {
  QueryCost cost;
  walk_slabs(index, v, [&](std::size_t u) {
    ++cost.polygons;
    cost.nodes += index.vertex(u).slab_nodes;
  });
  return cost;
}

QueryCost query_cost(const LrgIndex& index, ReachId v) { return query_cost(index, index.index(v)); }

}  // namespace wshed
