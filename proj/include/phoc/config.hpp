#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phoc {

// Region partition geometries. Canonical order is X, Y, O, R.
enum class RegionKind { X, Y, O, R };

constexpr char kind_letter(RegionKind k) {
  switch (k) {
    case RegionKind::X: return 'x';
    case RegionKind::Y: return 'y';
    case RegionKind::O: return 'o';
    case RegionKind::R: return 'r';
  }
  return '?';
}

enum class LevelSelection { Full, Odd, Last };

std::string to_string(LevelSelection sel);
LevelSelection parse_level_selection(std::string_view text);

// Region kinds with their maximum pyramid level, in canonical order.
struct PhocConfig {
  std::vector<std::pair<RegionKind, int>> entries;

  bool operator==(const PhocConfig&) const = default;
};

// One bit of a symbol signature. The whole-formula bit is shared across
// kinds: every kind's level 1 is the full bounding box, so all kept
// level-1 regions collapse into this single leading bit.
struct BitDescriptor {
  bool whole = false;
  RegionKind kind = RegionKind::X;
  int level = 1;
  int regionIndex = 1;

  bool operator==(const BitDescriptor&) const = default;
};

struct BitLayout {
  std::vector<BitDescriptor> descriptors;

  int width() const { return static_cast<int>(descriptors.size()); }
};

// Grammar: runs of region letters followed by an integer level, e.g.
// "yr7" (Y and R to level 7) or "x2r7". Result is canonically ordered.
PhocConfig parse_config(std::string_view text);

// Canonical compact form; adjacent kinds sharing a level share one integer.
std::string config_to_string(const PhocConfig& cfg);

// Full -> 1..maxLevel; Odd -> odd values; Last -> {maxLevel}.
std::vector<int> select_levels(int maxLevel, LevelSelection sel);

// Descriptor list for the kept levels of every kind, capped at 64 bits.
BitLayout bit_layout(const PhocConfig& cfg, LevelSelection sel);

// All non-empty kind subsets with per-kind maxLevel <= maxLevelBound
// (odd only when oddMaxOnly) whose full-selection width fits bitBound.
std::vector<PhocConfig> enumerate_configs(int maxLevelBound, bool oddMaxOnly,
                                          int bitBound);

}  // namespace phoc
