#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "wshed/catchment.hpp"
#include "wshed/network.hpp"

namespace wshed {

/// Network file: `reach_id<TAB>downstream_id<TAB>flag` per line, downstream 0
/// for the outlet, flag `M` (major) or `m` (minor); `#` starts a comment line.
RawNetwork read_network(std::istream& is);
/// Writes tree reaches then excluded reaches, each group in ascending id.
void write_network(std::ostream& os, const StreamTree& tree);

/// Raster file: `width height`, then `height` lines of `width` reach ids,
/// 0 for unassigned. Line r of the body holds row r.
GridRaster read_raster(std::istream& is);
void write_raster(std::ostream& os, const GridRaster& raster);

/// Throws Error(IoError).
std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wshed
