#pragma once

// Test-only oracles, kept independent of the incremental bookkeeping they
// check.

#include <algorithm>
#include <vector>

#include "tilesim/assembly.hpp"

namespace tilesim::testing {

// Free sides recomputed from scratch: every live-coloured face of an occupied
// cell whose neighbour is empty. Sorted for comparison.
inline std::vector<FreeSide> recount_free_sides(const Assembly& asm_) {
  std::vector<FreeSide> out;
  const TileSystem& sys = asm_.system();
  for (const Placement& p : asm_.placements()) {
    for (int d = 0; d < 4; ++d) {
      const Colour c = sys.tiles[p.tile].world_face(d, p.orient);
      if (c == 0 || !sys.live(c)) continue;
      if (asm_.occupied(p.x + dx_of(d), p.y + dy_of(d))) continue;
      out.push_back({p.x, p.y, static_cast<std::uint8_t>(d), c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<FreeSide> sorted_free_sides(const Assembly& asm_) {
  auto sides = asm_.free_sides();
  std::sort(sides.begin(), sides.end());
  return sides;
}

}  // namespace tilesim::testing
