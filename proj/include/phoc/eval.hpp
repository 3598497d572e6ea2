#pragma once

#include <map>
#include <string>
#include <vector>

#include "phoc/search.hpp"

namespace phoc {

// Graded relevance judgments. Absence of a (qid, docId) pair means the
// document is unjudged for that topic.
struct Qrels {
  std::map<std::string, std::map<std::string, int>> judgments;  // qid -> doc -> grade

  // -1 when unjudged.
  int grade(const std::string& qid, const std::string& docId) const;
};

// Whitespace-separated lines: `qid 0 docid grade`.
Qrels load_qrels(const std::string& path);

// Keeps exactly the judged documents of a ranking, order preserved.
std::vector<std::string> prime_filter(const std::vector<std::string>& ranking,
                                      const Qrels& qrels, const std::string& qid);

double precision_at_k(const std::vector<std::string>& filtered, const Qrels& qrels,
                      const std::string& qid, int k, int relThreshold);

// Denominator is the total number of judged documents at or above the
// threshold, retrieved or not.
double average_precision(const std::vector<std::string>& filtered, const Qrels& qrels,
                         const std::string& qid, int relThreshold);

// Gain = grade, discount 1/log2(rank+1), ideal from judged grades
// sorted descending.
double ndcg_at_k(const std::vector<std::string>& filtered, const Qrels& qrels,
                 const std::string& qid, int k = 1000);

// Prime metrics for one run. Topics without a qualifying judged document
// are absent from a metric's per-topic map and excluded from its mean.
struct MetricReport {
  // metric name -> topic -> value
  std::map<std::string, std::map<std::string, double>> perTopic;
  std::map<std::string, double> mean;
};

inline const std::vector<std::string> kMetricNames = {"ndcg@1000", "map", "p@10",
                                                      "p@5", "p@1"};

MetricReport evaluate_run(const std::vector<RunEntry>& run, const Qrels& qrels,
                          int relThreshold);

struct TTestVerdict {
  double t = 0.0;
  double pRaw = 1.0;
  bool significant = false;  // after Bonferroni correction
};

// Two-sided paired t-tests of each system against the baseline;
// significant iff pRaw * systems.size() < alpha.
std::vector<TTestVerdict> paired_ttest_bonferroni(
    const std::vector<double>& baseline,
    const std::vector<std::vector<double>>& systems, double alpha);

// Combines two rankings of the same configs by mean reciprocal rank.
struct RankedConfig {
  std::string config;
  double meanReciprocalRank = 0.0;
};

std::vector<RankedConfig> select_by_reciprocal_rank(
    const std::vector<std::string>& rankingA,
    const std::vector<std::string>& rankingB);

}  // namespace phoc
