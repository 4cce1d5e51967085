#include "wshed/catchment.hpp"

#include <algorithm>
#include <sstream>

#include "wshed/boundary.hpp"
#include "wshed/error.hpp"

namespace wshed {

CellCatchment::CellCatchment(ReachId owner, std::vector<Cell> cells)
    : owner_(owner), cells_(std::move(cells)) {
  if (cells_.empty()) {
    std::ostringstream os;
    os << "catchment of reach " << owner << " has no cells";
    throw Error(ErrorCode::EmptyInput, os.str());
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool CellCatchment::contains(Cell c) const noexcept {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

CellCatchment dissolve(std::span<const CellCatchment* const> parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyInput, "dissolve of an empty list");
  std::vector<Cell> merged;
  if (parts.size() == 1) {
    merged.assign(parts[0]->cells().begin(), parts[0]->cells().end());
  } else if (parts.size() == 2) {
    auto a = parts[0]->cells();
    auto b = parts[1]->cells();
    merged.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  } else {
    std::size_t total = 0;
    for (const CellCatchment* p : parts) total += p->area();
    merged.reserve(total);
    for (const CellCatchment* p : parts)
      merged.insert(merged.end(), p->cells().begin(), p->cells().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  }
  return CellCatchment(parts[0]->owner(), std::move(merged), CellCatchment::Sorted{});
}

CellCatchment dissolve(std::span<const CellCatchment> parts) {
  std::vector<const CellCatchment*> ptrs;
  ptrs.reserve(parts.size());
  for (const CellCatchment& c : parts) ptrs.push_back(&c);
  return dissolve(std::span<const CellCatchment* const>(ptrs));
}

GridRaster::GridRaster(std::int32_t width, std::int32_t height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::InvalidArgument, "raster dimensions must be positive");
  owners_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::optional<ReachId> GridRaster::owner(std::int32_t col, std::int32_t row) const {
  if (col < 0 || row < 0 || col >= width_ || row >= height_) return std::nullopt;
  const std::uint64_t id = owners_[static_cast<std::size_t>(row) * width_ + col];
  if (id == 0) return std::nullopt;
  return ReachId{id};
}

void GridRaster::assign(std::int32_t col, std::int32_t row, ReachId owner) {
  if (col < 0 || row < 0 || col >= width_ || row >= height_)
    throw Error(ErrorCode::InvalidArgument, "cell outside raster");
  if (owner.value == 0) throw Error(ErrorCode::InvalidArgument, "reach id 0 is reserved");
  owners_[static_cast<std::size_t>(row) * width_ + col] = owner.value;
}

void GridRaster::clear(std::int32_t col, std::int32_t row) {
  owners_.at(static_cast<std::size_t>(row) * width_ + col) = 0;
}

std::map<ReachId, CellCatchment> partition_from_raster(const GridRaster& raster) {
  std::map<ReachId, std::vector<Cell>> cells;
  // Column-major scan produces each list already sorted by (col, row).
  for (std::int32_t col = 0; col < raster.width(); ++col)
    for (std::int32_t row = 0; row < raster.height(); ++row)
      if (auto id = raster.owner(col, row)) cells[*id].push_back(Cell{col, row});

  std::map<ReachId, CellCatchment> out;
  for (auto& [id, list] : cells) out.emplace(id, CellCatchment(id, std::move(list)));
  return out;
}

std::map<ReachId, CellCatchment> partition_from_raster(const GridRaster& raster,
                                                       const StreamTree& tree) {
  auto out = partition_from_raster(raster);
  for (const auto& [id, c] : out) {
    if (!tree.find(id) && tree.find_excluded(id) == nullptr) {
      std::ostringstream os;
      os << "raster cells are owned by reach " << id << " which is not in the network";
      throw Error(ErrorCode::UnknownReach, os.str());
    }
  }
  std::vector<ReachId> missing;
  for (ReachId id : tree.ids())
    if (!out.contains(id)) missing.push_back(id);
  if (!missing.empty()) {
    std::ostringstream os;
    os << "no raster cells for reach";
    for (std::size_t i = 0; i < missing.size() && i < 16; ++i) os << ' ' << missing[i];
    if (missing.size() > 16) os << " ... (" << missing.size() << " total)";
    throw Error(ErrorCode::MissingCatchment, os.str());
  }
  return out;
}

CatchmentTable::CatchmentTable(const StreamTree& tree,
                               const std::map<ReachId, CellCatchment>& by_id) {
  catchments_.reserve(tree.size());
  nodes_.reserve(tree.size());
  for (ReachId id : tree.ids()) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      std::ostringstream os;
      os << "no catchment for reach " << id;
      throw Error(ErrorCode::MissingCatchment, os.str());
    }
    catchments_.push_back(it->second);
    nodes_.push_back(boundary_node_count(it->second.cells()));
  }
}

}  // namespace wshed
