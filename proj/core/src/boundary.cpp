#include "wshed/boundary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "wshed/error.hpp"

namespace wshed {

namespace {

enum Dir : std::uint8_t { East = 0, North = 1, West = 2, South = 3 };

constexpr std::array<int, 4> kDx{1, 0, -1, 0};
constexpr std::array<int, 4> kDy{0, 1, 0, -1};

/// Sorted cell list. Membership uses a bitmap over the bounding box when the
/// box is compact and binary search otherwise.
class Mask {
 public:
  explicit Mask(std::span<const Cell> cells) : cells_(cells.begin(), cells.end()) {
    if (!std::is_sorted(cells_.begin(), cells_.end())) std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    if (cells_.empty()) return;
    std::int64_t r0 = cells_.front().row;
    std::int64_t r1 = r0;
    for (const Cell& c : cells_) {
      r0 = std::min<std::int64_t>(r0, c.row);
      r1 = std::max<std::int64_t>(r1, c.row);
    }
    const std::int64_t w = static_cast<std::int64_t>(cells_.back().col) - cells_.front().col + 1;
    const std::int64_t h = r1 - r0 + 1;
    if (w * h <= 64 * static_cast<std::int64_t>(cells_.size()) + 4096) {
      x0_ = cells_.front().col;
      y0_ = r0;
      w_ = w;
      h_ = h;
      bits_.assign(static_cast<std::size_t>(w * h), 0);
      for (const Cell& c : cells_) bits_[static_cast<std::size_t>((c.row - y0_) * w_ + (c.col - x0_))] = 1;
    }
  }

  [[nodiscard]] std::span<const Cell> cells() const noexcept { return cells_; }
  [[nodiscard]] bool dense() const noexcept { return !bits_.empty(); }
  [[nodiscard]] std::int64_t box_x() const noexcept { return x0_; }
  [[nodiscard]] std::int64_t box_y() const noexcept { return y0_; }
  [[nodiscard]] std::int64_t box_width() const noexcept { return w_; }
  [[nodiscard]] std::int64_t box_height() const noexcept { return h_; }

  /// Position of a cell in cells(), or npos.
  [[nodiscard]] std::size_t find(std::int32_t x, std::int32_t y) const noexcept {
    const Cell key{x, y};
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key);
    if (it == cells_.end() || *it != key) return npos;
    return static_cast<std::size_t>(it - cells_.begin());
  }

  [[nodiscard]] bool filled(std::int32_t x, std::int32_t y) const noexcept {
    if (!bits_.empty()) {
      const std::int64_t lx = static_cast<std::int64_t>(x) - x0_;
      const std::int64_t ly = static_cast<std::int64_t>(y) - y0_;
      if (lx < 0 || ly < 0 || lx >= w_ || ly >= h_) return false;
      return bits_[static_cast<std::size_t>(ly * w_ + lx)] != 0;
    }
    return std::binary_search(cells_.begin(), cells_.end(), Cell{x, y});
  }

  /// Boundary edge leaving corner (x, y) in direction `d` with a filled cell
  /// on its left and an empty one on its right.
  [[nodiscard]] bool has_edge(std::int32_t x, std::int32_t y, int d) const noexcept {
    switch (d) {
      case East: return filled(x, y) && !filled(x, y - 1);
      case North: return filled(x - 1, y) && !filled(x, y);
      case West: return filled(x - 1, y - 1) && !filled(x - 1, y);
      default: return filled(x, y - 1) && !filled(x - 1, y - 1);
    }
  }

  /// Cell on the left of the edge leaving (x, y) in direction `d`.
  [[nodiscard]] static std::pair<std::int32_t, std::int32_t> left_cell(std::int32_t x,
                                                                       std::int32_t y, int d) {
    switch (d) {
      case East: return {x, y};
      case North: return {x - 1, y};
      case West: return {x - 1, y - 1};
      default: return {x, y - 1};
    }
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::vector<Cell> cells_;
  std::int64_t x0_ = 0;
  std::int64_t y0_ = 0;
  std::int64_t w_ = 0;
  std::int64_t h_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Edge {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::uint8_t d = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Boundary edges of every cell: the side is on the boundary when the
/// neighbour across it is empty. Filled cell on the left.
template <typename Visit>
void for_each_edge(const Mask& mask, Visit&& visit) {
  for (const Cell& c : mask.cells()) {
    if (!mask.filled(c.col, c.row - 1)) visit(Edge{c.col, c.row, East});
    if (!mask.filled(c.col + 1, c.row)) visit(Edge{c.col + 1, c.row, North});
    if (!mask.filled(c.col, c.row + 1)) visit(Edge{c.col + 1, c.row + 1, West});
    if (!mask.filled(c.col - 1, c.row)) visit(Edge{c.col, c.row + 1, South});
  }
}

/// Visited flags per boundary edge: a per-corner array when the mask is
/// dense, a sorted edge list otherwise.
class EdgeFlags {
 public:
  explicit EdgeFlags(const Mask& mask) : mask_(mask) {
    if (mask.dense()) {
      flags_.assign(static_cast<std::size_t>((mask.box_width() + 1) * (mask.box_height() + 1)), 0);
    } else {
      for_each_edge(mask, [this](const Edge& e) { sparse_.push_back(e); });
      std::sort(sparse_.begin(), sparse_.end());
      flags_.assign(sparse_.size(), 0);
    }
  }

  [[nodiscard]] bool test(const Edge& e) const { return (flags_[slot(e)] >> bit(e)) & 1U; }
  void set(const Edge& e) { flags_[slot(e)] |= static_cast<std::uint8_t>(1U << bit(e)); }

 private:
  [[nodiscard]] std::size_t slot(const Edge& e) const {
    if (mask_.dense())
      return static_cast<std::size_t>((e.y - mask_.box_y()) * (mask_.box_width() + 1) +
                                      (e.x - mask_.box_x()));
    return static_cast<std::size_t>(std::lower_bound(sparse_.begin(), sparse_.end(), e) -
                                    sparse_.begin());
  }
  [[nodiscard]] unsigned bit(const Edge& e) const { return mask_.dense() ? e.d : 0U; }

  const Mask& mask_;
  std::vector<Edge> sparse_;
  std::vector<std::uint8_t> flags_;
};

struct TracedRing {
  Ring ring;
  std::pair<std::int32_t, std::int32_t> seed_cell;
  Edge first;
};

/// Walks every boundary ring of the mask. Calls `emit` once per ring, in
/// order of the ring's smallest edge (corner, then direction); each ring
/// starts at that edge's corner.
template <typename Emit>
void walk_rings(const Mask& mask, Emit&& emit) {
  EdgeFlags used(mask);
  std::vector<TracedRing> rings;
  std::vector<Edge> path;
  for_each_edge(mask, [&](const Edge& start) {
    if (used.test(start)) return;
    path.clear();
    Edge e = start;
    while (true) {
      used.set(e);
      path.push_back(e);
      const std::int32_t x = e.x + kDx[e.d];
      const std::int32_t y = e.y + kDy[e.d];
      // Left, straight, right.
      int next = (e.d + 1) % 4;
      if (!mask.has_edge(x, y, next)) {
        next = e.d;
        if (!mask.has_edge(x, y, next)) next = (e.d + 3) % 4;
      }
      e = Edge{x, y, static_cast<std::uint8_t>(next)};
      if (e == start) break;
    }
    const auto lowest = static_cast<std::size_t>(std::min_element(path.begin(), path.end()) - path.begin());
    TracedRing out;
    out.first = path[lowest];
    out.seed_cell = Mask::left_cell(out.first.x, out.first.y, out.first.d);
    const std::size_t n = path.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Edge& cur = path[(lowest + k) % n];
      const Edge& prev = path[(lowest + k + n - 1) % n];
      if (k == 0 || cur.d != prev.d) out.ring.corners.push_back(Point{cur.x, cur.y});
    }
    rings.push_back(std::move(out));
  });
  std::sort(rings.begin(), rings.end(),
            [](const TracedRing& a, const TracedRing& b) { return a.first < b.first; });
  for (TracedRing& r : rings) emit(std::move(r));
}

/// 4-connected component id per cell of mask.cells().
std::vector<std::size_t> label_components(const Mask& mask) {
  const auto cells = mask.cells();
  std::vector<std::size_t> parent(cells.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&parent](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto join = [&](std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::size_t j = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i + 1 < cells.size() && cells[i + 1].col == cells[i].col &&
        cells[i + 1].row == cells[i].row + 1)
      join(i, i + 1);
    const Cell right{cells[i].col + 1, cells[i].row};
    while (j < cells.size() && cells[j] < right) ++j;
    if (j < cells.size() && cells[j] == right) join(i, j);
  }
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = root(i);
  return parent;
}

}  // namespace

std::uint64_t BoundaryPolygon::node_count() const noexcept {
  std::uint64_t total = 0;
  for (const Polygon& p : polygons) {
    total += p.outer.corners.size();
    for (const Ring& h : p.holes) total += h.corners.size();
  }
  return total;
}

std::size_t BoundaryPolygon::ring_count() const noexcept {
  std::size_t total = 0;
  for (const Polygon& p : polygons) total += 1 + p.holes.size();
  return total;
}

std::int64_t signed_area2(const Ring& ring) noexcept {
  std::int64_t sum = 0;
  const std::size_t n = ring.corners.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring.corners[i];
    const Point& b = ring.corners[(i + 1) % n];
    sum += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
  }
  return sum;
}

BoundaryPolygon trace_boundary(std::span<const Cell> cells) {
  BoundaryPolygon out;
  if (cells.empty()) return out;
  const Mask mask(cells);
  const auto component = label_components(mask);

  // Outer ring and holes per component, in discovery order.
  std::map<std::size_t, std::size_t> polygon_of;
  std::vector<std::pair<std::size_t, Ring>> holes;
  walk_rings(mask, [&](TracedRing traced) {
    const std::size_t comp = component[mask.find(traced.seed_cell.first, traced.seed_cell.second)];
    if (signed_area2(traced.ring) > 0) {
      polygon_of[comp] = out.polygons.size();
      out.polygons.push_back(Polygon{std::move(traced.ring), {}});
    } else {
      holes.emplace_back(comp, std::move(traced.ring));
    }
  });
  for (auto& [comp, ring] : holes) out.polygons[polygon_of.at(comp)].holes.push_back(std::move(ring));
  return out;
}

BoundaryPolygon trace_boundary(const CellCatchment& c) { return trace_boundary(c.cells()); }

std::uint64_t boundary_node_count(std::span<const Cell> cells) {
  if (cells.empty()) return 0;
  const Mask mask(cells);
  std::uint64_t total = 0;
  walk_rings(mask, [&](const TracedRing& traced) { total += traced.ring.corners.size(); });
  return total;
}

std::vector<Cell> rasterize(const BoundaryPolygon& boundary) {
  // Row -> x positions of vertical edges crossing the row's center line.
  std::map<std::int32_t, std::vector<std::int32_t>> crossings;
  auto add_ring = [&](const Ring& ring) {
    const std::size_t n = ring.corners.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = ring.corners[i];
      const Point& b = ring.corners[(i + 1) % n];
      if (a.x != b.x) continue;
      for (std::int32_t row = std::min(a.y, b.y); row < std::max(a.y, b.y); ++row)
        crossings[row].push_back(a.x);
    }
  };
  for (const Polygon& p : boundary.polygons) {
    add_ring(p.outer);
    for (const Ring& h : p.holes) add_ring(h);
  }
  std::vector<Cell> cells;
  for (auto& [row, xs] : crossings) {
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
      for (std::int32_t col = xs[i]; col < xs[i + 1]; ++col) cells.push_back(Cell{col, row});
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

std::string to_wkt(const BoundaryPolygon& boundary) {
  std::string out;
  auto put_ring = [&out](const Ring& ring) {
    out += '(';
    for (const Point& p : ring.corners) {
      out += std::to_string(p.x);
      out += ' ';
      out += std::to_string(p.y);
      out += ", ";
    }
    const Point& first = ring.corners.front();
    out += std::to_string(first.x);
    out += ' ';
    out += std::to_string(first.y);
    out += ')';
  };
  for (const Polygon& p : boundary.polygons) {
    out += "POLYGON(";
    put_ring(p.outer);
    for (const Ring& h : p.holes) {
      out += ',';
      put_ring(h);
    }
    out += ")\n";
  }
  return out;
}

namespace {

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t integer() {
    skip_space();
    std::int32_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("expected integer coordinate");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  Ring ring() {
    expect("(");
    Ring r;
    do {
      const std::int32_t x = integer();
      const std::int32_t y = integer();
      r.corners.push_back(Point{x, y});
    } while (accept(','));
    expect(")");
    if (r.corners.size() < 5 || r.corners.front() != r.corners.back()) fail("ring is not closed");
    r.corners.pop_back();
    return r;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " at offset " << pos_;
    throw Error(ErrorCode::ParseError, os.str());
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\t'))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BoundaryPolygon parse_wkt(std::string_view text) {
  WktReader reader(text);
  BoundaryPolygon out;
  while (!reader.at_end()) {
    reader.expect("POLYGON");
    reader.expect("(");
    Polygon p;
    p.outer = reader.ring();
    while (reader.accept(',')) p.holes.push_back(reader.ring());
    reader.expect(")");
    out.polygons.push_back(std::move(p));
  }
  return out;
}

}  // namespace wshed
