#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phoc/encoder.hpp"
#include "phoc/index.hpp"
#include "phoc/layout.hpp"

namespace phoc {

struct ScoredHit {
  std::string formulaId;
  double score = 0.0;
};

struct RunEntry {
  std::string qid;
  std::string docId;
  int rank = 0;  // 1-based
  double score = 0.0;
  std::string tag;
};

// Binary cosine surrogate: sum over shared labels of
// popcount(query word AND candidate word), divided by sqrt(candidate norm).
// Rank-equivalent to cosine for a fixed query.
double score(const FormulaPhoc& query, const FormulaPhoc& candidate);

// Candidates are the union of postings for the query's labels; zero-score
// formulas are never returned. Ties broken by formulaId ascending.
std::vector<ScoredHit> retrieve_topk(const InvertedIndex& idx,
                                     const FormulaLayout& query, int k);

std::vector<RunEntry> run_topics(const InvertedIndex& idx,
                                 const std::vector<FormulaLayout>& topics,
                                 int k, const std::string& tag);

// TREC format: `qid Q0 docid rank score tag`, scores with 6 decimals.
void write_run(const std::vector<RunEntry>& entries, std::ostream& os);
std::vector<RunEntry> read_run(const std::string& path);

}  // namespace phoc
