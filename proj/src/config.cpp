#include "phoc/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "phoc/error.hpp"

namespace phoc {

namespace {

constexpr std::array<RegionKind, 4> kCanonicalKinds = {
    RegionKind::X, RegionKind::Y, RegionKind::O, RegionKind::R};

std::optional<RegionKind> kind_from_letter(char c) {
  switch (c) {
    case 'x': return RegionKind::X;
    case 'y': return RegionKind::Y;
    case 'o': return RegionKind::O;
    case 'r': return RegionKind::R;
    default: return std::nullopt;
  }
}

int canonical_rank(RegionKind k) {
  switch (k) {
    case RegionKind::X: return 0;
    case RegionKind::Y: return 1;
    case RegionKind::O: return 2;
    case RegionKind::R: return 3;
  }
  return 4;
}

}  // namespace

std::string to_string(LevelSelection sel) {
  switch (sel) {
    case LevelSelection::Full: return "full";
    case LevelSelection::Odd: return "odd";
    case LevelSelection::Last: return "last";
  }
  return "?";
}

LevelSelection parse_level_selection(std::string_view text) {
  if (text == "full") return LevelSelection::Full;
  if (text == "odd") return LevelSelection::Odd;
  if (text == "last") return LevelSelection::Last;
  throw ParseError("unknown level selection '" + std::string(text) +
                   "' (expected full|odd|last)");
}

PhocConfig parse_config(std::string_view text) {
  if (text.empty()) throw ParseError("empty config string");
  std::array<int, 4> levels = {0, 0, 0, 0};
  std::vector<RegionKind> run;
  std::size_t i = 0;
  while (i < text.size()) {
    run.clear();
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) {
      const auto k = kind_from_letter(text[i]);
      if (!k)
        throw ParseError("config '" + std::string(text) + "': unknown region kind '" +
                         std::string(1, text[i]) + "' at position " + std::to_string(i));
      if (levels[canonical_rank(*k)] != 0 ||
          std::find(run.begin(), run.end(), *k) != run.end())
        throw ParseError("config '" + std::string(text) + "': repeated kind '" +
                         std::string(1, text[i]) + "' at position " + std::to_string(i));
      run.push_back(*k);
      ++i;
    }
    if (run.empty())
      throw ParseError("config '" + std::string(text) + "': expected region letter at position " +
                       std::to_string(i));
    if (i == text.size())
      throw ParseError("config '" + std::string(text) + "': missing level after letters at position " +
                       std::to_string(i));
    int level = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      level = level * 10 + (text[i] - '0');
      ++i;
    }
    if (level < 1)
      throw ParseError("config '" + std::string(text) + "': level must be >= 1");
    for (RegionKind k : run) levels[canonical_rank(k)] = level;
  }
  PhocConfig cfg;
  for (RegionKind k : kCanonicalKinds) {
    if (levels[canonical_rank(k)] > 0) cfg.entries.emplace_back(k, levels[canonical_rank(k)]);
  }
  return cfg;
}

std::string config_to_string(const PhocConfig& cfg) {
  std::string out;
  for (std::size_t i = 0; i < cfg.entries.size();) {
    std::size_t j = i;
    while (j < cfg.entries.size() && cfg.entries[j].second == cfg.entries[i].second) {
      out += kind_letter(cfg.entries[j].first);
      ++j;
    }
    out += std::to_string(cfg.entries[i].second);
    i = j;
  }
  return out;
}

std::vector<int> select_levels(int maxLevel, LevelSelection sel) {
  if (maxLevel < 1) throw Error("select_levels: maxLevel must be >= 1");
  std::vector<int> out;
  switch (sel) {
    case LevelSelection::Full:
      for (int l = 1; l <= maxLevel; ++l) out.push_back(l);
      break;
    case LevelSelection::Odd:
      for (int l = 1; l <= maxLevel; l += 2) out.push_back(l);
      break;
    case LevelSelection::Last:
      out.push_back(maxLevel);
      break;
  }
  return out;
}

BitLayout bit_layout(const PhocConfig& cfg, LevelSelection sel) {
  BitLayout layout;
  bool keepsLevelOne = false;
  for (const auto& [kind, maxLevel] : cfg.entries) {
    for (int l : select_levels(maxLevel, sel)) {
      if (l == 1) keepsLevelOne = true;
    }
  }
  if (keepsLevelOne) layout.descriptors.push_back({.whole = true});
  for (const auto& [kind, maxLevel] : cfg.entries) {
    for (int l : select_levels(maxLevel, sel)) {
      if (l == 1) continue;  // folded into the shared whole-formula bit
      for (int r = 1; r <= l; ++r) {
        layout.descriptors.push_back({.whole = false, .kind = kind, .level = l, .regionIndex = r});
      }
    }
  }
  if (layout.width() > 64)
    throw CapacityError("config " + config_to_string(cfg) + "/" + to_string(sel) +
                        " needs " + std::to_string(layout.width()) +
                        " bits, exceeding the 64-bit word");
  return layout;
}

std::vector<PhocConfig> enumerate_configs(int maxLevelBound, bool oddMaxOnly,
                                          int bitBound) {
  if (maxLevelBound < 1) throw Error("enumerate_configs: maxLevelBound must be >= 1");
  std::vector<int> levelChoices;
  for (int l = 1; l <= maxLevelBound; ++l) {
    if (!oddMaxOnly || l % 2 == 1) levelChoices.push_back(l);
  }
  std::vector<PhocConfig> out;
  // Subsets of the 4 kinds with every per-kind level choice.
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<RegionKind> kinds;
    for (int b = 0; b < 4; ++b) {
      if (mask & (1 << b)) kinds.push_back(kCanonicalKinds[b]);
    }
    std::vector<std::size_t> pick(kinds.size(), 0);
    while (true) {
      PhocConfig cfg;
      for (std::size_t i = 0; i < kinds.size(); ++i) {
        cfg.entries.emplace_back(kinds[i], levelChoices[pick[i]]);
      }
      int width = 1;  // shared whole-formula bit
      for (const auto& [kind, m] : cfg.entries) width += m * (m + 1) / 2 - 1;
      if (width <= bitBound) out.push_back(std::move(cfg));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < levelChoices.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const PhocConfig& a, const PhocConfig& b) {
    return config_to_string(a) < config_to_string(b);
  });
  return out;
}

}  // namespace phoc
