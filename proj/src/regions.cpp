#include "phoc/regions.hpp"

#include <cmath>

#include "phoc/error.hpp"

namespace phoc {

std::vector<std::pair<double, double>> region_intervals(const BoundingBox& box,
                                                        RegionKind kind,
                                                        int level) {
  if (level < 1) throw Error("region_intervals: level must be >= 1");
  const double lo = (kind == RegionKind::X) ? box.x0 : box.y0;
  const double hi = (kind == RegionKind::X) ? box.x1 : box.y1;
  std::vector<std::pair<double, double>> out;
  out.reserve(level);
  const double step = (hi - lo) / level;
  for (int k = 1; k <= level; ++k) {
    const double a = lo + (k - 1) * step;
    const double b = (k == level) ? hi : lo + k * step;
    out.emplace_back(a, b);
  }
  return out;
}

namespace {

// Span/interval overlap. Intervals are half-open; the last one is
// closed at the upper end. A zero-extent span is a point.
bool band_member(double spanLo, double spanHi, double lo, double hi, bool last) {
  if (spanLo < spanHi) {
    return std::max(spanLo, lo) < std::min(spanHi, hi);
  }
  // point span
  if (last) return lo <= spanLo && spanLo <= hi;
  return lo <= spanLo && spanLo < hi;
}

// Ring index from a normalized radius in [0,1]: ring k covers
// [(k-1)/l, k/l), with the outermost ring closed (and absorbing any
// radius beyond 1).
bool ring_member(double radius, int level, int regionIndex) {
  if (regionIndex == level) return radius >= double(level - 1) / level;
  return radius >= double(regionIndex - 1) / level &&
         radius < double(regionIndex) / level;
}

}  // namespace

bool member(const SymbolPlacement& sym, const BoundingBox& box,
            const RegionDescriptor& d) {
  if (d.level == 1) return true;  // whole formula
  switch (d.kind) {
    case RegionKind::X:
    case RegionKind::Y: {
      // same arithmetic as region_intervals, without materializing the list
      const double lo0 = (d.kind == RegionKind::X) ? box.x0 : box.y0;
      const double hi0 = (d.kind == RegionKind::X) ? box.x1 : box.y1;
      const double step = (hi0 - lo0) / d.level;
      const double lo = lo0 + (d.regionIndex - 1) * step;
      const double hi = (d.regionIndex == d.level) ? hi0 : lo0 + d.regionIndex * step;
      const double a = (d.kind == RegionKind::X) ? sym.xLo() : sym.yLo();
      const double b = (d.kind == RegionKind::X) ? sym.xHi() : sym.yHi();
      return band_member(a, b, lo, hi, d.regionIndex == d.level);
    }
    case RegionKind::R: {
      const double rx = std::abs(sym.cx - box.centerX()) / (box.width() / 2.0);
      const double ry = std::abs(sym.cy - box.centerY()) / (box.height() / 2.0);
      return ring_member(std::max(rx, ry), d.level, d.regionIndex);
    }
    case RegionKind::O: {
      // Semi-axes scaled by sqrt(2) so the outermost ellipse
      // circumscribes the box corners.
      const double ax = std::sqrt(2.0) * box.width() / 2.0;
      const double ay = std::sqrt(2.0) * box.height() / 2.0;
      const double ex = (sym.cx - box.centerX()) / ax;
      const double ey = (sym.cy - box.centerY()) / ay;
      return ring_member(std::hypot(ex, ey), d.level, d.regionIndex);
    }
  }
  return false;
}

}  // namespace phoc
