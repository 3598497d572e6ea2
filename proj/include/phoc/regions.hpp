#pragma once

#include <utility>
#include <vector>

#include "phoc/config.hpp"
#include "phoc/layout.hpp"

namespace phoc {

// Region k of level l for one kind: the k-th of l bands for X/Y, the
// k-th ring counted from the innermost for O/R.
struct RegionDescriptor {
  RegionKind kind = RegionKind::X;
  int level = 1;
  int regionIndex = 1;
};

// The l equal half-open intervals of the box extent along the given
// axis (kind X or Y). The final interval is closed at the upper end.
std::vector<std::pair<double, double>> region_intervals(const BoundingBox& box,
                                                        RegionKind kind,
                                                        int level);

// Membership test. X/Y use the symbol span (half-open overlap, point
// containment for zero extent); O/R use the centroid only. Level 1 of
// any kind is the whole formula and always matches.
bool member(const SymbolPlacement& sym, const BoundingBox& box,
            const RegionDescriptor& d);

}  // namespace phoc
