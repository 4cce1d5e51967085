#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wshed/boundary.hpp"
#include "wshed/catchment.hpp"
#include "wshed/levels.hpp"
#include "wshed/lrg.hpp"

namespace wshed {

/// Total watershed of one reach and what it cost to assemble.
struct WatershedResult {
  BoundaryPolygon boundary;
  CellCatchment cells;
  std::uint64_t merged_polygons = 0;
  std::uint64_t merged_nodes = 0;
};

struct QueryCost {
  std::uint64_t polygons = 0;
  std::uint64_t nodes = 0;

  friend bool operator==(const QueryCost&, const QueryCost&) = default;
};

/// Stored slabs whose union is the watershed of v: v's own slab, then the
/// frontier slabs found recursively. Returned in visiting order (depth-first,
/// frontier in discovery order).
std::vector<std::size_t> stitched_slabs(const LrgIndex& index, std::size_t v);

/// Throws Error(UnknownReach).
WatershedResult stitch_watershed(const LrgIndex& index, ReachId v);

/// Same counters as stitch_watershed without building the union.
QueryCost query_cost(const LrgIndex& index, ReachId v);
QueryCost query_cost(const LrgIndex& index, std::size_t v);

}  // namespace wshed
