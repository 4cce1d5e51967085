#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wshed/network.hpp"

namespace wshed {

/// Modified nested set labels of a stream tree.
///
/// For every vertex: d = depth-first discovery time in [1, n], f = largest d
/// found in its upstream subtree (so leaves have d == f), delta = hops to the
/// root. The upstream set of v is exactly the vertices whose d lies in
/// [d(v), f(v)]. Vertex indices match the StreamTree they were computed from.
class MnsLabels {
 public:
  MnsLabels() = default;

  /// Rebuilds labels from stored columns (e.g. a persisted index). `ids` must
  /// be strictly ascending; d must be a permutation of 1..n and the
  /// [d, f] intervals must nest. Throws Error(ParseError) otherwise.
  static MnsLabels from_columns(std::vector<ReachId> ids, std::vector<std::int64_t> d,
                                std::vector<std::int64_t> f, std::vector<std::int64_t> delta);

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] ReachId id(std::size_t v) const { return ids_[v]; }
  [[nodiscard]] std::span<const ReachId> ids() const noexcept { return ids_; }

  [[nodiscard]] std::int64_t d(std::size_t v) const { return d_[v]; }
  [[nodiscard]] std::int64_t f(std::size_t v) const { return f_[v]; }
  [[nodiscard]] std::int64_t delta(std::size_t v) const { return delta_[v]; }
  [[nodiscard]] bool is_leaf(std::size_t v) const { return d_[v] == f_[v]; }

  [[nodiscard]] std::optional<std::size_t> find(ReachId id) const noexcept;
  /// Throws Error(UnknownReach).
  [[nodiscard]] std::size_t index(ReachId id) const;

  /// Vertices in discovery order: preorder()[d - 1] has discovery time d.
  [[nodiscard]] std::span<const std::size_t> preorder() const noexcept { return by_d_; }
  /// Upstream vertices of v (v first), as a contiguous slice of preorder().
  [[nodiscard]] std::span<const std::size_t> upstream(std::size_t v) const;

  /// Vertex discoveries plus descents back toward the root; 2n - 1 for a
  /// fresh labeling, 0 for labels restored from columns.
  [[nodiscard]] std::uint64_t traversal_events() const noexcept { return events_; }

  friend bool operator==(const MnsLabels& a, const MnsLabels& b) {
    return a.ids_ == b.ids_ && a.d_ == b.d_ && a.f_ == b.f_ && a.delta_ == b.delta_;
  }

  friend MnsLabels mns_label(const StreamTree& tree);

 private:
  std::vector<ReachId> ids_;
  std::vector<std::int64_t> d_;
  std::vector<std::int64_t> f_;
  std::vector<std::int64_t> delta_;
  std::vector<std::size_t> by_d_;
  std::uint64_t events_ = 0;
};

/// Iterative depth-first labeling from the root, children in ascending id.
MnsLabels mns_label(const StreamTree& tree);

/// Every reach whose flow passes through v, v included.
std::vector<ReachId> upstream_set(const MnsLabels& labels, ReachId v);

/// Tree height: the largest delta.
std::int64_t height(const MnsLabels& labels);

}  // namespace wshed
