#include "phoc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

#include "phoc/error.hpp"

namespace phoc {

int Qrels::grade(const std::string& qid, const std::string& docId) const {
  const auto qit = judgments.find(qid);
  if (qit == judgments.end()) return -1;
  const auto dit = qit->second.find(docId);
  if (dit == qit->second.end()) return -1;
  return dit->second;
}

Qrels load_qrels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open qrels file: " + path);
  Qrels q;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string qid, iter, doc;
    int grade;
    if (!(ss >> qid >> iter >> doc >> grade) || grade < 0)
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed qrels line");
    q.judgments[qid][doc] = grade;
  }
  return q;
}

std::vector<std::string> prime_filter(const std::vector<std::string>& ranking,
                                      const Qrels& qrels, const std::string& qid) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& doc : ranking) {
    if (!seen.insert(doc).second)
      throw Error("duplicate docId '" + doc + "' in ranking for topic " + qid);
    if (qrels.grade(qid, doc) >= 0) out.push_back(doc);
  }
  return out;
}

double precision_at_k(const std::vector<std::string>& filtered, const Qrels& qrels,
                      const std::string& qid, int k, int relThreshold) {
  if (k < 1) throw Error("precision_at_k: k must be >= 1");
  int rel = 0;
  const std::size_t lim = std::min<std::size_t>(filtered.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < lim; ++i) {
    if (qrels.grade(qid, filtered[i]) >= relThreshold) ++rel;
  }
  return static_cast<double>(rel) / k;
}

double average_precision(const std::vector<std::string>& filtered, const Qrels& qrels,
                         const std::string& qid, int relThreshold) {
  int totalRelevant = 0;
  const auto qit = qrels.judgments.find(qid);
  if (qit != qrels.judgments.end()) {
    for (const auto& [doc, grade] : qit->second) {
      if (grade >= relThreshold) ++totalRelevant;
    }
  }
  if (totalRelevant == 0)
    throw Error("average_precision: no relevant judged documents for topic " + qid);
  double sum = 0.0;
  int relSeen = 0;
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    if (qrels.grade(qid, filtered[i]) >= relThreshold) {
      ++relSeen;
      sum += static_cast<double>(relSeen) / static_cast<double>(i + 1);
    }
  }
  return sum / totalRelevant;
}

double ndcg_at_k(const std::vector<std::string>& filtered, const Qrels& qrels,
                 const std::string& qid, int k) {
  const auto qit = qrels.judgments.find(qid);
  std::vector<int> grades;
  if (qit != qrels.judgments.end()) {
    for (const auto& [doc, grade] : qit->second) grades.push_back(grade);
  }
  std::sort(grades.rbegin(), grades.rend());
  if (grades.empty() || grades.front() <= 0)
    throw Error("ndcg_at_k: no positively judged documents for topic " + qid);

  double dcg = 0.0;
  const std::size_t lim = std::min<std::size_t>(filtered.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < lim; ++i) {
    dcg += qrels.grade(qid, filtered[i]) / std::log2(static_cast<double>(i) + 2.0);
  }
  double idcg = 0.0;
  const std::size_t ilim = std::min<std::size_t>(grades.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < ilim; ++i) {
    idcg += grades[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / idcg;
}

MetricReport evaluate_run(const std::vector<RunEntry>& run, const Qrels& qrels,
                          int relThreshold) {
  // Group docs per topic, preserving rank order.
  std::map<std::string, std::vector<std::string>> perTopic;
  for (const auto& e : run) perTopic[e.qid].push_back(e.docId);
  // Judged topics with no run entries still count as (empty) rankings.
  for (const auto& [qid, docs] : qrels.judgments) {
    (void)docs;
    perTopic.try_emplace(qid);
  }

  MetricReport report;
  for (const auto& [qid, ranking] : perTopic) {
    const auto qit = qrels.judgments.find(qid);
    if (qit == qrels.judgments.end()) continue;
    bool anyPositive = false, anyRelevant = false;
    for (const auto& [doc, grade] : qit->second) {
      anyPositive |= grade > 0;
      anyRelevant |= grade >= relThreshold;
    }
    const auto filtered = prime_filter(ranking, qrels, qid);
    if (anyPositive) {
      report.perTopic["ndcg@1000"][qid] = ndcg_at_k(filtered, qrels, qid, 1000);
    }
    if (anyRelevant) {
      report.perTopic["map"][qid] = average_precision(filtered, qrels, qid, relThreshold);
      report.perTopic["p@10"][qid] = precision_at_k(filtered, qrels, qid, 10, relThreshold);
      report.perTopic["p@5"][qid] = precision_at_k(filtered, qrels, qid, 5, relThreshold);
      report.perTopic["p@1"][qid] = precision_at_k(filtered, qrels, qid, 1, relThreshold);
    }
  }
  for (const auto& name : kMetricNames) {
    const auto it = report.perTopic.find(name);
    if (it == report.perTopic.end() || it->second.empty()) continue;
    double sum = 0.0;
    for (const auto& [qid, v] : it->second) sum += v;
    report.mean[name] = sum / static_cast<double>(it->second.size());
  }
  return report;
}

std::vector<TTestVerdict> paired_ttest_bonferroni(
    const std::vector<double>& baseline,
    const std::vector<std::vector<double>>& systems, double alpha) {
  const std::size_t n = baseline.size();
  if (n < 2) throw Error("paired t-test needs at least 2 topics");
  std::vector<TTestVerdict> out;
  const boost::math::students_t dist(static_cast<double>(n - 1));
  for (const auto& sys : systems) {
    if (sys.size() != n) throw Error("paired t-test: mismatched topic sets");
    double meanDiff = 0.0;
    for (std::size_t i = 0; i < n; ++i) meanDiff += sys[i] - baseline[i];
    meanDiff /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = sys[i] - baseline[i] - meanDiff;
      var += d * d;
    }
    var /= static_cast<double>(n - 1);

    TTestVerdict v;
    if (var == 0.0) {
      if (meanDiff == 0.0) {
        v.t = 0.0;
        v.pRaw = 1.0;
      } else {
        v.t = meanDiff > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
        v.pRaw = 0.0;
      }
    } else {
      v.t = meanDiff / std::sqrt(var / static_cast<double>(n));
      v.pRaw = 2.0 * boost::math::cdf(dist, -std::abs(v.t));
    }
    v.significant = v.pRaw * static_cast<double>(systems.size()) < alpha;
    out.push_back(v);
  }
  return out;
}

std::vector<RankedConfig> select_by_reciprocal_rank(
    const std::vector<std::string>& rankingA,
    const std::vector<std::string>& rankingB) {
  if (std::set<std::string>(rankingA.begin(), rankingA.end()) !=
      std::set<std::string>(rankingB.begin(), rankingB.end()))
    throw Error("select_by_reciprocal_rank: rankings cover different config sets");
  std::map<std::string, double> mrr;
  for (std::size_t i = 0; i < rankingA.size(); ++i) mrr[rankingA[i]] += 0.5 / (i + 1);
  for (std::size_t i = 0; i < rankingB.size(); ++i) mrr[rankingB[i]] += 0.5 / (i + 1);
  std::vector<RankedConfig> out;
  for (const auto& [cfg, v] : mrr) out.push_back({cfg, v});
  std::sort(out.begin(), out.end(), [](const RankedConfig& a, const RankedConfig& b) {
    if (a.meanReciprocalRank != b.meanReciprocalRank)
      return a.meanReciprocalRank > b.meanReciprocalRank;
    return a.config < b.config;
  });
  return out;
}

}  // namespace phoc
