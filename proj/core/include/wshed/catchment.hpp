#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wshed/network.hpp"

namespace wshed {

/// Unit lattice cell occupying [col, col + 1] x [row, row + 1].
struct Cell {
  std::int32_t col = 0;
  std::int32_t row = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Lateral catchment of a reach: a non-empty set of lattice cells, kept
/// sorted by (col, row) without duplicates.
class CellCatchment {
 public:
  /// Throws Error(EmptyInput) if `cells` is empty.
  CellCatchment(ReachId owner, std::vector<Cell> cells);

  [[nodiscard]] ReachId owner() const noexcept { return owner_; }
  [[nodiscard]] std::span<const Cell> cells() const noexcept { return cells_; }
  [[nodiscard]] std::size_t area() const noexcept { return cells_.size(); }
  [[nodiscard]] bool contains(Cell c) const noexcept;

  /// Equality of cell sets, ignoring the owner.
  [[nodiscard]] bool same_cells(const CellCatchment& other) const noexcept {
    return cells_ == other.cells_;
  }

  friend bool operator==(const CellCatchment&, const CellCatchment&) = default;

 private:
  struct Sorted {};
  CellCatchment(ReachId owner, std::vector<Cell> cells, Sorted) noexcept
      : owner_(owner), cells_(std::move(cells)) {}

  friend CellCatchment dissolve(std::span<const CellCatchment* const> parts);

  ReachId owner_;
  std::vector<Cell> cells_;
};

/// Union of cell sets; the owner is taken from the first input.
/// Throws Error(EmptyInput) for an empty list.
CellCatchment dissolve(std::span<const CellCatchment> parts);
CellCatchment dissolve(std::span<const CellCatchment* const> parts);

[[nodiscard]] inline std::size_t area(const CellCatchment& c) noexcept { return c.area(); }

/// Dense owner grid; 0 marks an unassigned cell.
class GridRaster {
 public:
  /// Throws Error(InvalidArgument) for non-positive dimensions.
  GridRaster(std::int32_t width, std::int32_t height);

  [[nodiscard]] std::int32_t width() const noexcept { return width_; }
  [[nodiscard]] std::int32_t height() const noexcept { return height_; }

  /// Empty for unassigned cells and cells outside the grid.
  [[nodiscard]] std::optional<ReachId> owner(std::int32_t col, std::int32_t row) const;
  void assign(std::int32_t col, std::int32_t row, ReachId owner);
  void clear(std::int32_t col, std::int32_t row);

  friend bool operator==(const GridRaster&, const GridRaster&) = default;

 private:
  std::int32_t width_;
  std::int32_t height_;
  std::vector<std::uint64_t> owners_;
};

/// One catchment per owner found in the raster.
std::map<ReachId, CellCatchment> partition_from_raster(const GridRaster& raster);

/// As above, additionally requiring a catchment for every tree vertex
/// (Error MissingCatchment) and that every owner is a known reach, either in
/// the tree or an excluded divergence (Error UnknownReach).
std::map<ReachId, CellCatchment> partition_from_raster(const GridRaster& raster,
                                                       const StreamTree& tree);

/// Catchments aligned with a tree's dense vertex indices, with the boundary
/// node count of each catchment cached.
class CatchmentTable {
 public:
  /// Throws Error(MissingCatchment) when a tree vertex has no catchment.
  CatchmentTable(const StreamTree& tree, const std::map<ReachId, CellCatchment>& by_id);

  [[nodiscard]] std::size_t size() const noexcept { return catchments_.size(); }
  [[nodiscard]] const CellCatchment& operator[](std::size_t v) const { return catchments_[v]; }
  [[nodiscard]] std::uint64_t node_count(std::size_t v) const { return nodes_[v]; }
  [[nodiscard]] std::span<const CellCatchment> all() const noexcept { return catchments_; }

 private:
  std::vector<CellCatchment> catchments_;
  std::vector<std::uint64_t> nodes_;
};

}  // namespace wshed
