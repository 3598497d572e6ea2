#include "phoc/encoder.hpp"

#include <bit>

namespace phoc {

std::uint64_t encode_symbol(const SymbolPlacement& sym, const BoundingBox& box,
                            const BitLayout& layout) {
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < layout.descriptors.size(); ++i) {
    const auto& d = layout.descriptors[i];
    const bool hit =
        d.whole || member(sym, box, {d.kind, d.level, d.regionIndex});
    if (hit) word |= std::uint64_t{1} << i;
  }
  return word;
}

FormulaPhoc encode_formula(const FormulaLayout& f, const BitLayout& layout) {
  FormulaPhoc out;
  out.id = f.id;
  const BoundingBox box = bounding_box(f);
  for (const auto& sym : f.symbols) {
    out.perSymbol[sym.label] |= encode_symbol(sym, box, layout);
  }
  for (const auto& [label, word] : out.perSymbol) {
    out.norm += static_cast<std::uint32_t>(std::popcount(word));
  }
  return out;
}

}  // namespace phoc
