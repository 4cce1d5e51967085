#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace wshed {

/// Positive reach identifier. Zero is reserved for "no reach" in file formats.
struct ReachId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(ReachId, ReachId) = default;
};

std::ostream& operator<<(std::ostream& os, ReachId id);

enum class Divergence { Major, Minor };

struct RawReach {
  ReachId id;
  std::optional<ReachId> downstream;
  Divergence divergence = Divergence::Major;
};

/// Reaches as read from a network file, before tree validation.
struct RawNetwork {
  std::vector<RawReach> reaches;
};

/// A reach left out of the indexed tree (a minor divergence, or anything that
/// drains through one). It keeps its downstream edge for path traversal.
struct ExcludedReach {
  ReachId id;
  std::optional<ReachId> downstream;

  friend bool operator==(const ExcludedReach&, const ExcludedReach&) = default;
};

/// Rooted stream tree. Vertices are addressed by a dense index in
/// [0, size()); index order equals ascending ReachId order, so the children of
/// a vertex are listed in ascending id order.
class StreamTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return ids_.size() - 1; }

  [[nodiscard]] std::size_t root() const noexcept { return root_; }
  [[nodiscard]] ReachId root_id() const noexcept { return ids_[root_]; }

  [[nodiscard]] ReachId id(std::size_t v) const { return ids_[v]; }
  [[nodiscard]] std::span<const ReachId> ids() const noexcept { return ids_; }

  [[nodiscard]] std::optional<std::size_t> find(ReachId id) const noexcept;
  /// Throws Error(UnknownReach) when the id is not a tree vertex.
  [[nodiscard]] std::size_t index(ReachId id) const;

  /// Downstream neighbour, or npos for the root.
  [[nodiscard]] std::size_t parent(std::size_t v) const { return parent_[v]; }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t v) const;
  [[nodiscard]] bool is_leaf(std::size_t v) const { return children(v).empty(); }

  [[nodiscard]] std::span<const ExcludedReach> excluded() const noexcept { return excluded_; }
  [[nodiscard]] const ExcludedReach* find_excluded(ReachId id) const noexcept;

  friend StreamTree normalize(const RawNetwork& raw);

 private:
  StreamTree() = default;

  std::vector<ReachId> ids_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> child_offsets_;
  std::vector<std::size_t> children_;
  std::size_t root_ = 0;
  std::vector<ExcludedReach> excluded_;
};

/// Validates a raw network and produces the tree used for indexing.
///
/// Minor-divergence reaches keep their downstream edge but contribute no
/// upstream edge to the tree. Reaches that drain through a minor divergence are
/// excluded with it, since they have no path to the root inside the tree.
///
/// Throws Error with EmptyInput, DuplicateReach, DanglingDownstream,
/// CycleDetected, NoRoot or MultipleRoots.
StreamTree normalize(const RawNetwork& raw);

/// Path from `v` to the root following downstream edges, `v` first. Excluded
/// reaches are traversed through their retained downstream edge.
std::vector<ReachId> downstream_path(const StreamTree& tree, ReachId v);

}  // namespace wshed
