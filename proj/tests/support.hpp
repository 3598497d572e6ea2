#pragma once

#include <random>
#include <string>
#include <vector>

#include "phoc/layout.hpp"

namespace phoc::test {

inline const std::vector<std::string> kVocab = {
    "x", "y", "z", "+", "-", "=", "1", "2", "(", ")",
    "\\alpha", "\\beta", "\\sum", "\\frac", "a", "b", "c", "n", "i", "0"};

inline FormulaLayout random_layout(std::mt19937_64& rng, const std::string& id,
                                   int maxSymbols = 12) {
  std::uniform_int_distribution<int> nSym(1, maxSymbols);
  std::uniform_int_distribution<std::size_t> pick(0, kVocab.size() - 1);
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_real_distribution<double> ext(0.0, 2.0);
  FormulaLayout f;
  f.id = id;
  const int n = nSym(rng);
  for (int i = 0; i < n; ++i) {
    f.symbols.push_back({kVocab[pick(rng)], pos(rng), pos(rng), ext(rng), ext(rng)});
  }
  return f;
}

inline std::vector<FormulaLayout> random_corpus(std::mt19937_64& rng, int count,
                                                const std::string& prefix = "f") {
  std::vector<FormulaLayout> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(random_layout(rng, prefix + std::to_string(i)));
  }
  return out;
}

}  // namespace phoc::test
