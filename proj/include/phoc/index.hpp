#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phoc/config.hpp"
#include "phoc/encoder.hpp"
#include "phoc/layout.hpp"

namespace phoc {

struct Posting {
  std::uint32_t formulaRef = 0;  // handle into idTable
  std::uint64_t word = 0;

  bool operator==(const Posting&) const = default;
};

// Immutable label -> postings map with per-formula norms and the
// configuration the signatures were encoded under.
struct InvertedIndex {
  std::string configString;
  LevelSelection selection = LevelSelection::Full;
  BitLayout layout;
  std::vector<std::string> vocabulary;           // sorted
  std::vector<std::vector<Posting>> postings;    // parallel to vocabulary
  std::vector<std::string> idTable;
  std::vector<std::uint32_t> normTable;          // parallel to idTable

  // Index of the label in vocabulary, or -1 when absent.
  std::int64_t lookup(const std::string& label) const;
};

struct IndexStats {
  std::uint64_t formulaCount = 0;
  std::uint64_t vocabularySize = 0;
  std::uint64_t postingCount = 0;
  std::uint64_t bytesOnDisk = 0;  // 0 when the index was never persisted
  int bitWidth = 0;
};

InvertedIndex build_index(const std::vector<FormulaLayout>& corpus,
                          const PhocConfig& cfg, LevelSelection sel);

// Directory layout: meta (text), vocab, ids, norms, postings.
void write_index(const InvertedIndex& idx, const std::string& dir);
InvertedIndex read_index(const std::string& dir);

IndexStats stats(const InvertedIndex& idx, const std::string& dir = "");

}  // namespace phoc
