#include "wshed/reference.hpp"

#include <optional>
#include <span>

#include "wshed/error.hpp"

namespace wshed {

WatershedResult baseline_query(const MnsLabels& labels, const CatchmentTable& catchments,
                               ReachId v) {
  const std::size_t start = labels.index(v);
  std::vector<const CellCatchment*> parts;
  std::uint64_t nodes = 0;
  for (std::size_t w : labels.upstream(start)) {
    parts.push_back(&catchments[w]);
    nodes += catchments.node_count(w);
  }
  CellCatchment merged = dissolve(std::span<const CellCatchment* const>(parts));
  BoundaryPolygon boundary = trace_boundary(merged);
  return WatershedResult{std::move(boundary), std::move(merged), parts.size(), nodes};
}

QueryCost baseline_cost(const MnsLabels& labels, const CatchmentTable& catchments,
                        std::size_t v) {
  QueryCost cost;
  for (std::size_t w : labels.upstream(v)) {
    ++cost.polygons;
    cost.nodes += catchments.node_count(w);
  }
  return cost;
}

namespace {

ProcessedModel run_processed(const StreamTree& tree, const MnsLabels& labels,
                             const CatchmentTable& catchments, bool keep_boundaries) {
  const std::size_t n = tree.size();
  if (labels.size() != n || catchments.size() != n)
    throw Error(ErrorCode::IncompleteInput, "labels or catchments do not cover the tree");

  ProcessedModel model;
  if (keep_boundaries) model.boundaries.resize(n);

  // Naive accounting from subtree sums over the discovery order.
  std::vector<std::uint64_t> prefix_nodes(n + 1, 0);
  const auto order = labels.preorder();
  for (std::size_t k = 0; k < n; ++k)
    prefix_nodes[k + 1] = prefix_nodes[k] + catchments.node_count(order[k]);
  for (std::size_t v = 0; v < n; ++v) {
    const auto lo = static_cast<std::size_t>(labels.d(v) - 1);
    const auto hi = static_cast<std::size_t>(labels.f(v));
    model.ledger.naive_polygons += hi - lo;
    model.ledger.naive_nodes += prefix_nodes[hi] - prefix_nodes[lo];
  }

  std::vector<std::optional<CellCatchment>> total(n);
  std::vector<std::uint64_t> total_nodes(n, 0);
  std::vector<const CellCatchment*> parts;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    parts.assign(1, &catchments[v]);
    std::uint64_t nodes = catchments.node_count(v);
    for (std::size_t c : tree.children(v)) {
      parts.push_back(&*total[c]);
      nodes += total_nodes[c];
    }
    model.ledger.bottom_up_polygons += parts.size();
    model.ledger.bottom_up_nodes += nodes;

    CellCatchment merged = dissolve(std::span<const CellCatchment* const>(parts));
    for (std::size_t c : tree.children(v)) total[c].reset();
    if (keep_boundaries) {
      model.boundaries[v] = trace_boundary(merged);
      total_nodes[v] = model.boundaries[v].node_count();
    } else {
      total_nodes[v] = boundary_node_count(merged.cells());
    }
    model.storage_nodes += total_nodes[v];
    total[v] = std::move(merged);
  }
  return model;
}

}  // namespace

ProcessedModel processed_build(const StreamTree& tree, const MnsLabels& labels,
                               const CatchmentTable& catchments) {
  return run_processed(tree, labels, catchments, true);
}

ProcessedModel processed_costs(const StreamTree& tree, const MnsLabels& labels,
                               const CatchmentTable& catchments) {
  return run_processed(tree, labels, catchments, false);
}

}  // namespace wshed
