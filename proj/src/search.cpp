#include "phoc/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "phoc/error.hpp"

namespace phoc {

double score(const FormulaPhoc& query, const FormulaPhoc& candidate) {
  if (candidate.norm == 0) throw Error("candidate '" + candidate.id + "' has zero norm");
  std::uint64_t shared = 0;
  for (const auto& [label, qword] : query.perSymbol) {
    const auto it = candidate.perSymbol.find(label);
    if (it != candidate.perSymbol.end()) shared += std::popcount(qword & it->second);
  }
  return static_cast<double>(shared) / std::sqrt(static_cast<double>(candidate.norm));
}

std::vector<ScoredHit> retrieve_topk(const InvertedIndex& idx,
                                     const FormulaLayout& query, int k) {
  if (k < 1) throw Error("retrieve_topk: k must be >= 1");
  if (query.symbols.empty()) throw Error("retrieve_topk: empty query");

  const FormulaPhoc q = encode_formula(query, idx.layout);

  std::vector<std::uint32_t> shared(idx.idTable.size(), 0);
  std::vector<std::uint32_t> touched;
  for (const auto& [label, qword] : q.perSymbol) {
    const std::int64_t v = idx.lookup(label);
    if (v < 0) continue;
    for (const Posting& p : idx.postings[static_cast<std::size_t>(v)]) {
      const auto inter = static_cast<std::uint32_t>(std::popcount(qword & p.word));
      if (inter == 0) continue;
      if (shared[p.formulaRef] == 0) touched.push_back(p.formulaRef);
      shared[p.formulaRef] += inter;
    }
  }

  std::vector<ScoredHit> hits;
  hits.reserve(touched.size());
  for (std::uint32_t ref : touched) {
    const double s = static_cast<double>(shared[ref]) /
                     std::sqrt(static_cast<double>(idx.normTable[ref]));
    hits.push_back({idx.idTable[ref], s});
  }
  std::sort(hits.begin(), hits.end(), [](const ScoredHit& a, const ScoredHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.formulaId < b.formulaId;
  });
  if (hits.size() > static_cast<std::size_t>(k)) hits.resize(static_cast<std::size_t>(k));
  return hits;
}

std::vector<RunEntry> run_topics(const InvertedIndex& idx,
                                 const std::vector<FormulaLayout>& topics,
                                 int k, const std::string& tag) {
  std::unordered_set<std::string> seen;
  std::vector<RunEntry> out;
  for (const auto& topic : topics) {
    if (!seen.insert(topic.id).second)
      throw Error("duplicate topic qid '" + topic.id + "'");
    const auto hits = retrieve_topk(idx, topic, k);
    int rank = 1;
    for (const auto& h : hits) {
      out.push_back({topic.id, h.formulaId, rank++, h.score, tag});
    }
  }
  return out;
}

void write_run(const std::vector<RunEntry>& entries, std::ostream& os) {
  os.setf(std::ios::fixed);
  os.precision(6);
  for (const auto& e : entries) {
    os << e.qid << " Q0 " << e.docId << ' ' << e.rank << ' ' << e.score << ' '
       << e.tag << '\n';
  }
}

std::vector<RunEntry> read_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open run file: " + path);
  std::vector<RunEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    RunEntry e;
    std::string q0;
    if (!(ss >> e.qid >> q0 >> e.docId >> e.rank >> e.score >> e.tag) || q0 != "Q0")
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed run line");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace phoc
