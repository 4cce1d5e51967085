#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "wshed/catchment.hpp"
#include "wshed/mns.hpp"
#include "wshed/network.hpp"

namespace wshed {

/// Vertices grouped by delta, each group in discovery order, so "vertices at
/// depth D upstream of v" is a binary search over one group.
class DepthIndex {
 public:
  explicit DepthIndex(const MnsLabels& labels);

  /// Vertices w with delta(w) == depth and d(w) in [d_lo, d_hi].
  [[nodiscard]] std::span<const std::size_t> range(std::int64_t depth, std::int64_t d_lo,
                                                   std::int64_t d_hi) const;
  [[nodiscard]] std::int64_t max_depth() const noexcept {
    return static_cast<std::int64_t>(groups_.size()) - 1;
  }

 private:
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::vector<std::int64_t>> group_d_;
};

/// A stored vertex of the reduced-graph set: a copy of its labels, the layer
/// it lives in, and its pre-merged slab, i.e. the union of the lateral
/// catchments w upstream of it with delta(w) < delta + b^level.
struct LrgVertex {
  ReachId id;
  std::int64_t d = 0;
  std::int64_t f = 0;
  std::int64_t delta = 0;
  int level = 0;
  CellCatchment slab;
  std::uint64_t slab_nodes = 0;
};

struct LrgLayer {
  int level = 0;
  /// Stored vertices (dense indices) in discovery order.
  std::vector<std::size_t> members;
  /// (u, w): w is a slab root at delta(u) + b^level(u) upstream of u.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Union work done while building the index. Every union reads its
/// accumulator (the vertex's own lower-layer slab, or its lateral catchment
/// on layer 0) plus the slabs it absorbs; each read is one operand.
struct BuildLedger {
  std::uint64_t union_operands = 0;
  std::uint64_t operand_nodes = 0;
  std::vector<std::uint64_t> operands_per_layer;
};

struct StorageStats {
  std::uint64_t polygon_count = 0;
  std::uint64_t node_count = 0;

  friend bool operator==(const StorageStats&, const StorageStats&) = default;
};

/// Immutable set of log-reduced layers H_0..H_L with every vertex stored once,
/// at the highest layer whose spacing divides its delta.
class LrgIndex {
 public:
  /// Checks that each vertex sits at query_level(delta, b, L), that L matches
  /// the tree height and that labels nest; derives layers and frontier edges.
  /// `vertices` must be sorted by id. Throws Error(InvalidBase / ParseError).
  static LrgIndex assemble(int base, int top_level, std::vector<LrgVertex> vertices);

  [[nodiscard]] int base() const noexcept { return base_; }
  [[nodiscard]] int top_level() const noexcept { return top_level_; }
  [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }

  [[nodiscard]] const MnsLabels& labels() const noexcept { return labels_; }
  [[nodiscard]] std::span<const LrgVertex> vertices() const noexcept { return vertices_; }
  [[nodiscard]] const LrgVertex& vertex(std::size_t v) const { return vertices_[v]; }
  [[nodiscard]] std::span<const LrgLayer> layers() const noexcept { return layers_; }

  /// Slab roots directly upstream of v's slab (delta(v) + b^level(v)).
  [[nodiscard]] std::span<const std::size_t> frontier(std::size_t v) const;

  /// Throws Error(UnknownReach).
  [[nodiscard]] std::size_t index(ReachId id) const { return labels_.index(id); }

 private:
  LrgIndex() = default;

  int base_ = 2;
  int top_level_ = 0;
  MnsLabels labels_;
  std::vector<LrgVertex> vertices_;
  std::vector<LrgLayer> layers_;
  std::vector<std::size_t> frontier_offsets_;
  std::vector<std::size_t> frontier_;
};

struct LrgBuild {
  LrgIndex index;
  BuildLedger ledger;
};

/// Builds the index bottom-up in one reverse-discovery pass. A slab of level
/// j is its level j-1 slab plus the level j-1 slabs rooted at delta + k*b^(j-1)
/// for k = 1..b-1, so every stored slab is read a bounded number of times.
///
/// Throws Error(InvalidBase) for b < 2 and Error(IncompleteInput) when labels
/// or catchments do not match the tree.
LrgBuild build_lrg(const StreamTree& tree, const MnsLabels& labels,
                   const CatchmentTable& catchments, int b);

/// Number of layers, L + 1.
[[nodiscard]] inline std::size_t layer_count(const LrgIndex& index) noexcept {
  return static_cast<std::size_t>(index.top_level()) + 1;
}

StorageStats storage_stats(const LrgIndex& index);

/// Text format: `LRG b L n`, then per stored vertex (by layer, then d) a line
/// `id level d f delta` and a line `c:col,row;col,row;...`.
void save_index(const LrgIndex& index, std::ostream& os);
/// Throws Error(ParseError) on malformed input.
LrgIndex load_index(std::istream& is);

}  // namespace wshed
