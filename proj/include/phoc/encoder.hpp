#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "phoc/config.hpp"
#include "phoc/layout.hpp"
#include "phoc/regions.hpp"

namespace phoc {

// Per-symbol packed signatures of one formula. Repeated occurrences of
// a label are OR-merged into a single word; norm is the total popcount
// over all words (the Hamming weight of the concatenated vector).
struct FormulaPhoc {
  std::string id;
  std::map<std::string, std::uint64_t> perSymbol;
  std::uint32_t norm = 0;
};

// Bit i of the result is set iff the symbol is a member of descriptor i.
std::uint64_t encode_symbol(const SymbolPlacement& sym, const BoundingBox& box,
                            const BitLayout& layout);

FormulaPhoc encode_formula(const FormulaLayout& f, const BitLayout& layout);

}  // namespace phoc
