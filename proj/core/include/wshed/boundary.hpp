#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wshed/catchment.hpp"

namespace wshed {

/// Lattice corner point; cell (col, row) spans corners (col, row)..(col+1, row+1).
struct Point {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Closed rectilinear ring stored as its corners only; the closing segment
/// from the last corner back to the first is implicit.
struct Ring {
  std::vector<Point> corners;

  friend bool operator==(const Ring&, const Ring&) = default;
};

struct Polygon {
  Ring outer;               // counter-clockwise
  std::vector<Ring> holes;  // clockwise

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Traced boundary of a cell set: one polygon per 4-connected component.
struct BoundaryPolygon {
  std::vector<Polygon> polygons;

  /// Total corners over all rings.
  [[nodiscard]] std::uint64_t node_count() const noexcept;
  [[nodiscard]] std::size_t ring_count() const noexcept;

  friend bool operator==(const BoundaryPolygon&, const BoundaryPolygon&) = default;
};

/// Twice the signed area of a ring (positive for counter-clockwise).
std::int64_t signed_area2(const Ring& ring) noexcept;

/// Exact boundary of the union of unit squares.
///
/// Edges are oriented with the cells on their left, so outer rings come out
/// counter-clockwise and holes clockwise. Where two cells touch only at a
/// corner the trace turns left, i.e. cells are grouped by 4-connectivity and
/// such a pinch point becomes a corner of both rings. Each ring starts at its
/// lexicographically smallest corner; polygons and holes are ordered by that
/// start corner. `cells` must be sorted and unique.
BoundaryPolygon trace_boundary(std::span<const Cell> cells);
BoundaryPolygon trace_boundary(const CellCatchment& c);

/// node_count() of the traced boundary without assembling rings.
std::uint64_t boundary_node_count(std::span<const Cell> cells);

/// Cells whose centers lie inside the boundary (even-odd rule), sorted.
std::vector<Cell> rasterize(const BoundaryPolygon& boundary);

/// One `POLYGON((x y, ...),(...))` line per polygon, rings explicitly closed.
std::string to_wkt(const BoundaryPolygon& boundary);

/// Inverse of to_wkt. Throws Error(ParseError) on malformed input.
BoundaryPolygon parse_wkt(std::string_view text);

}  // namespace wshed
