#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wshed/catchment.hpp"
#include "wshed/network.hpp"

namespace wshed {

/// Parameters of a synthetic stream network with a lattice catchment map.
struct SyntheticSpec {
  std::size_t n = 1;
  /// Relative weights of upstream branch counts 0, 1, 2, ...; the default is
  /// a critical binary branching process (mean one upstream reach).
  std::vector<double> branching{0.45, 0.10, 0.45};
  std::int32_t width = 1;
  std::int32_t height = 1;
  std::uint64_t seed = 0;
  /// Target mean leaves per slab. Carried into reports only; the generator
  /// does not steer towards it.
  double bandwidth_hint = 0.0;
};

struct SyntheticNetwork {
  StreamTree tree;
  GridRaster raster;
};

/// Deterministic for a given spec.
///
/// The tree is grown by a branching process that is restarted from a random
/// leaf whenever it dies out before reaching n reaches. The grid is walked
/// along a generalized Hilbert curve and cut into one contiguous run per
/// reach in discovery order, so every catchment is a 4-connected region,
/// every subtree's watershed is one contiguous run, and a reach's first
/// upstream neighbour always borders it. All cells are assigned.
///
/// Throws Error(InvalidArgument) for n == 0 or bad weights and
/// Error(GridTooSmall) when width * height < n.
SyntheticNetwork generate(const SyntheticSpec& spec);

/// Cells of a width x height grid in generalized Hilbert order. Consecutive
/// cells are 4-adjacent except for at most a few diagonal steps on odd sizes.
std::vector<Cell> hilbert_order(std::int32_t width, std::int32_t height);

}  // namespace wshed
