#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "phoc/error.hpp"
#include "phoc/eval.hpp"
#include "phoc/index.hpp"
#include "phoc/search.hpp"

namespace {

using namespace phoc;

void print_stats(const IndexStats& s) {
  std::cout << "formulas   " << s.formulaCount << "\n"
            << "vocabulary " << s.vocabularySize << "\n"
            << "postings   " << s.postingCount << "\n"
            << "bits       " << s.bitWidth << "\n"
            << "bytes      " << s.bytesOnDisk << "\n";
}

int cmd_index(const std::string& corpusPath, const std::string& configStr,
              const std::string& levels, const std::string& outDir) {
  const auto corpus = load_corpus(corpusPath);
  const auto cfg = parse_config(configStr);
  const auto sel = parse_level_selection(levels);
  const auto idx = build_index(corpus, cfg, sel);
  write_index(idx, outDir);
  print_stats(stats(idx, outDir));
  return 0;
}

int cmd_search(const std::string& indexDir, const std::string& topicsPath, int k,
               const std::string& tag, const std::string& outRun) {
  const auto idx = read_index(indexDir);
  const auto topics = load_topics(topicsPath);
  const auto entries = run_topics(idx, topics, k, tag);
  std::ofstream out(outRun);
  if (!out) throw Error("cannot write run file: " + outRun);
  write_run(entries, out);
  std::cout << "wrote " << entries.size() << " run entries to " << outRun << "\n";
  return 0;
}

std::string run_system_name(const std::vector<RunEntry>& run, const std::string& fallback) {
  return run.empty() ? fallback : run.front().tag;
}

void print_report(const std::string& system, const MetricReport& report) {
  std::cout << std::left << std::setw(16) << "metric" << std::right
            << std::setw(12) << "mean" << std::setw(10) << "topics" << "\n";
  for (const auto& name : kMetricNames) {
    const auto it = report.mean.find(name);
    std::cout << std::left << std::setw(16) << name << std::right << std::setw(12)
              << std::fixed << std::setprecision(4)
              << (it == report.mean.end() ? 0.0 : it->second) << std::setw(10)
              << (report.perTopic.count(name) ? report.perTopic.at(name).size() : 0)
              << "\n";
  }
  std::cout << "\n";
  for (const auto& name : kMetricNames) {
    const auto it = report.perTopic.find(name);
    if (it == report.perTopic.end()) continue;
    for (const auto& [qid, value] : it->second) {
      std::cout << system << ' ' << name << ' ' << qid << ' ' << std::fixed
                << std::setprecision(6) << value << "\n";
    }
  }
  for (const auto& name : kMetricNames) {
    const auto it = report.mean.find(name);
    if (it == report.mean.end()) continue;
    std::cout << system << ' ' << name << " mean " << std::fixed
              << std::setprecision(6) << it->second << "\n";
  }
}

int cmd_eval(const std::string& runPath, const std::string& qrelsPath, int threshold) {
  const auto run = read_run(runPath);
  const auto qrels = load_qrels(qrelsPath);
  const auto report = evaluate_run(run, qrels, threshold);
  print_report(run_system_name(run, runPath), report);
  return 0;
}

int cmd_compare(const std::string& baselinePath, const std::vector<std::string>& runPaths,
                const std::string& qrelsPath, int threshold, double alpha) {
  const auto qrels = load_qrels(qrelsPath);
  const auto baseRun = read_run(baselinePath);
  const auto baseReport = evaluate_run(baseRun, qrels, threshold);

  struct SystemEval {
    std::string name;
    MetricReport report;
  };
  std::vector<SystemEval> systems;
  for (const auto& path : runPaths) {
    const auto run = read_run(path);
    systems.push_back({run_system_name(run, path), evaluate_run(run, qrels, threshold)});
  }

  std::cout << "baseline: " << run_system_name(baseRun, baselinePath) << "\n";
  for (const auto& name : kMetricNames) {
    const auto bit = baseReport.perTopic.find(name);
    if (bit == baseReport.perTopic.end()) continue;
    std::vector<double> baseScores;
    std::vector<std::string> topicOrder;
    for (const auto& [qid, v] : bit->second) {
      topicOrder.push_back(qid);
      baseScores.push_back(v);
    }
    std::vector<std::vector<double>> sysScores;
    for (const auto& sys : systems) {
      const auto sit = sys.report.perTopic.find(name);
      if (sit == sys.report.perTopic.end() || sit->second.size() != topicOrder.size())
        throw Error("metric " + name + ": topic sets differ between baseline and " + sys.name);
      std::vector<double> scores;
      for (const auto& qid : topicOrder) {
        const auto v = sit->second.find(qid);
        if (v == sit->second.end())
          throw Error("metric " + name + ": topic sets differ between baseline and " + sys.name);
        scores.push_back(v->second);
      }
      sysScores.push_back(std::move(scores));
    }
    const auto verdicts = paired_ttest_bonferroni(baseScores, sysScores, alpha);
    for (std::size_t i = 0; i < systems.size(); ++i) {
      std::cout << systems[i].name << ' ' << name << ' ' << std::fixed
                << std::setprecision(4) << systems[i].report.mean.at(name)
                << " t=" << std::setprecision(4) << verdicts[i].t
                << " p=" << std::setprecision(6) << verdicts[i].pRaw
                << (verdicts[i].significant ? " *" : "") << "\n";
    }
  }
  return 0;
}

int cmd_bits(const std::string& configStr, const std::string& levels) {
  const auto cfg = parse_config(configStr);
  const auto sel = parse_level_selection(levels);
  const auto layout = bit_layout(cfg, sel);
  std::cout << "config " << config_to_string(cfg) << " levels " << to_string(sel)
            << "\n";
  for (int i = 0; i < layout.width(); ++i) {
    const auto& d = layout.descriptors[static_cast<std::size_t>(i)];
    std::cout << std::setw(3) << i << "  ";
    if (d.whole) {
      std::cout << "whole-formula\n";
    } else {
      std::cout << kind_letter(d.kind) << " level " << d.level << " region "
                << d.regionIndex << "\n";
    }
  }
  std::cout << "bits " << layout.width() << "\n";
  return 0;
}

int cmd_gridsearch(const std::string& corpusPath, const std::string& topicsPath,
                   const std::string& qrelsPath, int maxLevel, bool allMaxLevels,
                   int bitBound, int k, int threshold, int workers) {
  const auto corpus = load_corpus(corpusPath);
  const auto topics = load_topics(topicsPath);
  const auto qrels = load_qrels(qrelsPath);
  const auto configs = enumerate_configs(maxLevel, !allMaxLevels, bitBound);
  std::cout << "admissible configurations: " << configs.size() << "\n";

  struct Result {
    std::string name;
    double ndcg = 0.0;
    double p10 = 0.0;
  };
  std::vector<Result> results(configs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
      const auto& cfg = configs[i];
      const auto idx = build_index(corpus, cfg, LevelSelection::Full);
      const auto entries = run_topics(idx, topics, k, config_to_string(cfg));
      const auto report = evaluate_run(entries, qrels, threshold);
      Result r;
      r.name = config_to_string(cfg);
      if (report.mean.count("ndcg@1000")) r.ndcg = report.mean.at("ndcg@1000");
      if (report.mean.count("p@10")) r.p10 = report.mean.at("p@10");
      results[i] = std::move(r);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto ranked = [&](auto key) {
    std::vector<std::string> order;
    std::vector<Result> sorted = results;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const Result& a, const Result& b) {
      if (key(a) != key(b)) return key(a) > key(b);
      return a.name < b.name;
    });
    for (const auto& r : sorted) order.push_back(r.name);
    return order;
  };
  const auto byNdcg = ranked([](const Result& r) { return r.ndcg; });
  const auto byP10 = ranked([](const Result& r) { return r.p10; });
  const auto selection = select_by_reciprocal_rank(byNdcg, byP10);

  std::cout << std::left << std::setw(14) << "config" << std::right << std::setw(10)
            << "mrr" << std::setw(12) << "ndcg@1000" << std::setw(10) << "p@10"
            << "\n";
  for (const auto& rc : selection) {
    const auto it = std::find_if(results.begin(), results.end(),
                                 [&](const Result& r) { return r.name == rc.config; });
    std::cout << std::left << std::setw(14) << rc.config << std::right
              << std::setw(10) << std::fixed << std::setprecision(4)
              << rc.meanReciprocalRank << std::setw(12) << it->ndcg << std::setw(10)
              << it->p10 << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PHOC formula retrieval toolkit"};
  app.require_subcommand(1);

  std::string corpus, topics, qrelsPath, configStr, indexDir, outDir, outRun, runPath,
      baselinePath, tag = "phoc";
  std::string levels = "full";
  std::vector<std::string> runPaths;
  int k = 1000, threshold = 2, maxLevel = 9, bitBound = 64, workers = 1;
  double alpha = 0.05;
  bool allMaxLevels = false;

  auto* sIndex = app.add_subcommand("index", "Build and persist an inverted index");
  sIndex->add_option("--corpus", corpus)->required();
  sIndex->add_option("--config", configStr)->required();
  sIndex->add_option("--levels", levels);
  sIndex->add_option("--out", outDir)->required();

  auto* sSearch = app.add_subcommand("search", "Run topics against an index");
  sSearch->add_option("--index", indexDir)->required();
  sSearch->add_option("--topics", topics)->required();
  sSearch->add_option("--k", k);
  sSearch->add_option("--tag", tag);
  sSearch->add_option("--out", outRun)->required();

  auto* sEval = app.add_subcommand("eval", "Prime metrics for one run");
  sEval->add_option("--run", runPath)->required();
  sEval->add_option("--qrels", qrelsPath)->required();
  sEval->add_option("--threshold", threshold);

  auto* sCompare = app.add_subcommand("compare", "Significance tests against a baseline run");
  sCompare->add_option("--baseline", baselinePath)->required();
  sCompare->add_option("--run", runPaths)->required();
  sCompare->add_option("--qrels", qrelsPath)->required();
  sCompare->add_option("--threshold", threshold);
  sCompare->add_option("--alpha", alpha);

  auto* sBits = app.add_subcommand("bits", "Print the bit layout of a configuration");
  sBits->add_option("--config", configStr)->required();
  sBits->add_option("--levels", levels);

  auto* sGrid = app.add_subcommand("gridsearch", "Enumerate, run, and rank configurations");
  sGrid->add_option("--corpus", corpus)->required();
  sGrid->add_option("--topics", topics)->required();
  sGrid->add_option("--qrels", qrelsPath)->required();
  sGrid->add_option("--max-level", maxLevel);
  sGrid->add_flag("--all-max-levels", allMaxLevels,
                  "Allow even maximum levels (default: odd only)");
  sGrid->add_option("--bit-bound", bitBound);
  sGrid->add_option("--k", k);
  sGrid->add_option("--threshold", threshold);
  sGrid->add_option("--workers", workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sIndex->parsed()) return cmd_index(corpus, configStr, levels, outDir);
    if (sSearch->parsed()) return cmd_search(indexDir, topics, k, tag, outRun);
    if (sEval->parsed()) return cmd_eval(runPath, qrelsPath, threshold);
    if (sCompare->parsed())
      return cmd_compare(baselinePath, runPaths, qrelsPath, threshold, alpha);
    if (sBits->parsed()) return cmd_bits(configStr, levels);
    if (sGrid->parsed())
      return cmd_gridsearch(corpus, topics, qrelsPath, maxLevel, allMaxLevels, bitBound,
                            k, threshold, workers);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
