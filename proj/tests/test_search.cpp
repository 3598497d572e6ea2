#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "phoc/error.hpp"
#include "phoc/search.hpp"
#include "support.hpp"

using namespace phoc;

namespace {

// Exhaustive scoring over the whole corpus; independent of the index path.
std::vector<ScoredHit> brute_force(const std::vector<FormulaLayout>& corpus,
                                   const FormulaLayout& query,
                                   const BitLayout& layout, int k) {
  const auto q = encode_formula(query, layout);
  std::vector<ScoredHit> hits;
  for (const auto& f : corpus) {
    const auto c = encode_formula(f, layout);
    const double s = score(q, c);
    if (s > 0) hits.push_back({f.id, s});
  }
  std::sort(hits.begin(), hits.end(), [](const ScoredHit& a, const ScoredHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.formulaId < b.formulaId;
  });
  if (hits.size() > static_cast<std::size_t>(k)) hits.resize(static_cast<std::size_t>(k));
  return hits;
}

FormulaPhoc make_phoc(const std::string& id,
                      std::map<std::string, std::uint64_t> words) {
  FormulaPhoc p;
  p.id = id;
  p.perSymbol = std::move(words);
  for (const auto& [l, w] : p.perSymbol) p.norm += std::popcount(w);
  return p;
}

}  // namespace

TEST_CASE("score of a vector with itself is sqrt of its norm") {
  const auto a = make_phoc("a", {{"x", 0b1010}, {"y", 0b0110}});
  REQUIRE(a.norm == 4);
  CHECK(score(a, a) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("no shared labels scores zero") {
  const auto a = make_phoc("a", {{"x", 0b111}});
  const auto b = make_phoc("b", {{"y", 0b111}});
  CHECK(score(a, b) == 0.0);
}

TEST_CASE("hand-computed single label score") {
  const auto a = make_phoc("a", {{"x", 0b0011}});  // bits 1100 in descriptor order
  const auto b = make_phoc("b", {{"x", 0b0101}});  // bits 1010
  CHECK(score(a, b) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("zero-norm candidate is an error") {
  const auto a = make_phoc("a", {{"x", 1}});
  FormulaPhoc empty;
  empty.id = "bad";
  CHECK_THROWS_AS(score(a, empty), Error);
}

TEST_CASE("an indexed formula queried by itself ranks first") {
  std::mt19937_64 rng(41);
  const auto corpus = phoc::test::random_corpus(rng, 100);
  const auto cfg = parse_config("x3y3");
  const auto idx = build_index(corpus, cfg, LevelSelection::Full);
  const auto& probe = corpus[17];
  const auto hits = retrieve_topk(idx, probe, 10);
  REQUIRE(!hits.empty());
  const auto enc = encode_formula(probe, idx.layout);
  // self-score sqrt(norm) is the upper bound for the candidate itself
  bool found = false;
  for (const auto& h : hits) {
    if (h.formulaId == probe.id) {
      found = true;
      CHECK(h.score == doctest::Approx(std::sqrt(double(enc.norm))).epsilon(1e-12));
    }
    CHECK(h.score <= hits.front().score + 1e-12);
  }
  CHECK(found);
  CHECK(hits.front().score >= std::sqrt(double(enc.norm)) - 1e-12);
}

TEST_CASE("query with unseen labels returns nothing") {
  std::mt19937_64 rng(42);
  const auto corpus = phoc::test::random_corpus(rng, 20);
  const auto idx = build_index(corpus, parse_config("x2"), LevelSelection::Full);
  FormulaLayout query{"q", {{"unseen-label", 0.5, 0.5, 1, 1}}};
  CHECK(retrieve_topk(idx, query, 5).empty());
}

TEST_CASE("k beyond candidate count returns all candidates") {
  FormulaLayout a{"a", {{"x", 0.5, 0.5, 1, 1}}};
  FormulaLayout b{"b", {{"x", 0.5, 0.5, 1, 1}, {"y", 1.5, 0.5, 1, 1}}};
  const auto idx = build_index({a, b}, parse_config("x2"), LevelSelection::Full);
  FormulaLayout query{"q", {{"x", 0.5, 0.5, 1, 1}}};
  CHECK(retrieve_topk(idx, query, 1000).size() == 2);
}

TEST_CASE("retrieve_topk matches brute force on random corpora") {
  std::mt19937_64 rng(43);
  const auto cfg = parse_config("yr5");
  for (int trial = 0; trial < 30; ++trial) {
    const auto corpus = phoc::test::random_corpus(rng, 60);
    const auto idx = build_index(corpus, cfg, LevelSelection::Full);
    const auto query = phoc::test::random_layout(rng, "q");
    const auto fast = retrieve_topk(idx, query, 20);
    const auto slow = brute_force(corpus, query, idx.layout, 20);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].formulaId == slow[i].formulaId);
      CHECK(fast[i].score == doctest::Approx(slow[i].score).epsilon(1e-12));
    }
  }
}

TEST_CASE("score upper bound and subset equality condition") {
  std::mt19937_64 rng(44);
  const auto layout = bit_layout(parse_config("x3o3"), LevelSelection::Full);
  for (int trial = 0; trial < 200; ++trial) {
    const auto qf = phoc::test::random_layout(rng, "q");
    const auto cf = phoc::test::random_layout(rng, "c");
    const auto q = encode_formula(qf, layout);
    const auto c = encode_formula(cf, layout);
    const double s = score(q, c);
    CHECK(s >= 0.0);
    CHECK(s <= std::sqrt(double(c.norm)) + 1e-12);
    bool subset = true;
    for (const auto& [label, word] : c.perSymbol) {
      const auto it = q.perSymbol.find(label);
      subset &= it != q.perSymbol.end() && (word & ~it->second) == 0;
    }
    const bool atBound = std::abs(s - std::sqrt(double(c.norm))) < 1e-9;
    CHECK(atBound == subset);
  }
}

TEST_CASE("run_topics formats and orders entries") {
  FormulaLayout a{"a", {{"x", 0.5, 0.5, 1, 1}}};
  FormulaLayout b{"b", {{"x", 0.5, 0.5, 1, 1}, {"y", 1.5, 0.5, 1, 1}}};
  FormulaLayout c{"c", {{"y", 0.5, 0.5, 1, 1}}};
  const auto idx = build_index({a, b, c}, parse_config("x2"), LevelSelection::Full);
  FormulaLayout q1{"q1", {{"x", 0.5, 0.5, 1, 1}}};
  FormulaLayout q2{"q2", {{"y", 0.5, 0.5, 1, 1}}};
  const auto entries = run_topics(idx, {q1, q2}, 10, "tagged");
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].qid == "q1");
  CHECK(entries[0].rank == 1);
  CHECK(entries[1].qid == "q1");
  CHECK(entries[1].rank == 2);
  CHECK(entries[2].qid == "q2");
  CHECK(entries[3].qid == "q2");

  std::ostringstream os;
  write_run(entries, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  // identical formula: score = sqrt(norm) = sqrt(3)
  CHECK(line == "q1 Q0 a 1 1.732051 tagged");
}

TEST_CASE("duplicate topic qids are rejected") {
  FormulaLayout a{"a", {{"x", 0.5, 0.5, 1, 1}}};
  const auto idx = build_index({a}, parse_config("x1"), LevelSelection::Full);
  FormulaLayout q{"q1", {{"x", 0.5, 0.5, 1, 1}}};
  CHECK_THROWS_AS(run_topics(idx, {q, q}, 5, "t"), Error);
}

TEST_CASE("run output is deterministic") {
  std::mt19937_64 rng(45);
  const auto corpus = phoc::test::random_corpus(rng, 50);
  const auto idx = build_index(corpus, parse_config("xy3"), LevelSelection::Full);
  std::vector<FormulaLayout> topics;
  for (int i = 0; i < 5; ++i) topics.push_back(phoc::test::random_layout(rng, "q" + std::to_string(i)));
  std::ostringstream a, b;
  write_run(run_topics(idx, topics, 10, "t"), a);
  write_run(run_topics(idx, topics, 10, "t"), b);
  CHECK(a.str() == b.str());
}
