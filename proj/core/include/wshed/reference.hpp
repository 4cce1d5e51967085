#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wshed/boundary.hpp"
#include "wshed/catchment.hpp"
#include "wshed/mns.hpp"
#include "wshed/network.hpp"
#include "wshed/stitch.hpp"

namespace wshed {

// Baseline model: nothing precomputed, every query dissolves all upstream
// lateral catchments on demand.

/// Throws Error(UnknownReach).
WatershedResult baseline_query(const MnsLabels& labels, const CatchmentTable& catchments,
                               ReachId v);
QueryCost baseline_cost(const MnsLabels& labels, const CatchmentTable& catchments,
                        std::size_t v);

// Processed model: the total watershed of every vertex is precomputed.

struct ProcessedLedger {
  /// Union operands if every watershed is dissolved from scratch:
  /// sum over v of |upstream(v)|.
  std::uint64_t naive_polygons = 0;
  std::uint64_t naive_nodes = 0;
  /// Operands actually read by the bottom-up build (own catchment plus one
  /// finished watershed per child).
  std::uint64_t bottom_up_polygons = 0;
  std::uint64_t bottom_up_nodes = 0;
};

struct ProcessedModel {
  /// Indexed like the tree / labels.
  std::vector<BoundaryPolygon> boundaries;
  ProcessedLedger ledger;
  std::uint64_t storage_nodes = 0;
};

/// Computes every total watershed bottom-up, reusing child results.
ProcessedModel processed_build(const StreamTree& tree, const MnsLabels& labels,
                               const CatchmentTable& catchments);

/// Ledger and storage node count only; traced boundaries are dropped as soon
/// as they have been counted.
ProcessedModel processed_costs(const StreamTree& tree, const MnsLabels& labels,
                               const CatchmentTable& catchments);

}  // namespace wshed
