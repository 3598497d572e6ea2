#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct Exec {
  int status = -1;
  std::string output;
};

Exec run(const std::string& args) {
  Exec r;
  FILE* pipe = popen((g_cli + " " + args + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("phoccli" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

const char* kCorpus = R"({"id":"f1","symbols":[{"label":"x","cx":0.5,"cy":0.5,"w":1,"h":1},{"label":"+","cx":1.5,"cy":0.5,"w":1,"h":1},{"label":"y","cx":2.5,"cy":0.5,"w":1,"h":1}]}
{"id":"f2","symbols":[{"label":"y","cx":0.5,"cy":0.5,"w":1,"h":1},{"label":"+","cx":1.5,"cy":0.5,"w":1,"h":1},{"label":"x","cx":2.5,"cy":0.5,"w":1,"h":1}]}
{"id":"f3","symbols":[{"label":"a","cx":0.5,"cy":0.5,"w":1,"h":1},{"label":"=","cx":1.5,"cy":0.5,"w":1,"h":1},{"label":"b","cx":2.5,"cy":0.5,"w":1,"h":1}]}
)";

const char* kTopics = R"({"qid":"q1","symbols":[{"label":"x","cx":0.5,"cy":0.5,"w":1,"h":1},{"label":"+","cx":1.5,"cy":0.5,"w":1,"h":1},{"label":"y","cx":2.5,"cy":0.5,"w":1,"h":1}]}
)";

const char* kQrels = "q1 0 f1 3\nq1 0 f2 2\nq1 0 f3 0\n";

}  // namespace

TEST_CASE("bits reproduces the published widths") {
  CHECK(run("bits --config x1 --levels full").output.find("bits 1\n") != std::string::npos);
  CHECK(run("bits --config yr7 --levels full").output.find("bits 55\n") != std::string::npos);
  CHECK(run("bits --config yr7 --levels odd").output.find("bits 31\n") != std::string::npos);
  CHECK(run("bits --config x5y3r9 --levels last").output.find("bits 17\n") != std::string::npos);
}

TEST_CASE("bits rejects bad configs with exit 2") {
  CHECK(run("bits --config z5 --levels full").status == 2);
  CHECK(run("bits --config x9y9r9 --levels full").status == 2);
}

TEST_CASE("index, search, eval, compare pipeline") {
  Workspace ws;
  const auto corpus = ws.file("corpus.jsonl", kCorpus);
  const auto topics = ws.file("topics.jsonl", kTopics);
  const auto qrels = ws.file("qrels.txt", kQrels);
  const auto idxDir = ws.dir / "idx";

  const auto idxOut = run("index --corpus " + corpus.string() + " --config yr7 --levels full --out " + idxDir.string());
  CHECK(idxOut.status == 0);
  CHECK(idxOut.output.find("bits       55") != std::string::npos);
  CHECK(idxOut.output.find("formulas   3") != std::string::npos);

  const auto runFile = ws.dir / "run.txt";
  const auto sOut = run("search --index " + idxDir.string() + " --topics " + topics.string() + " --k 10 --tag sys1 --out " + runFile.string());
  CHECK(sOut.status == 0);
  const std::string firstRun = slurp(runFile);
  CHECK(firstRun.find("q1 Q0 f1 1") != std::string::npos);

  // rerun is byte-identical
  const auto runFile2 = ws.dir / "run2.txt";
  run("search --index " + idxDir.string() + " --topics " + topics.string() + " --k 10 --tag sys1 --out " + runFile2.string());
  CHECK(firstRun == slurp(runFile2));

  const auto eOut = run("eval --run " + runFile.string() + " --qrels " + qrels.string());
  CHECK(eOut.status == 0);
  CHECK(eOut.output.find("sys1 p@1 q1 1.000000") != std::string::npos);
  CHECK(eOut.output.find("sys1 ndcg@1000 mean") != std::string::npos);

  const auto cOut = run("compare --baseline " + runFile.string() + " --run " + runFile.string() + " --qrels " + qrels.string());
  // a single topic cannot support a t-test
  CHECK(cOut.status != 0);
}

TEST_CASE("search against a missing index exits 2") {
  Workspace ws;
  const auto topics = ws.file("topics.jsonl", kTopics);
  const auto r = run("search --index " + (ws.dir / "nope").string() + " --topics " + topics.string() + " --out " + (ws.dir / "r.txt").string());
  CHECK(r.status == 2);
}

TEST_CASE("eval reports malformed run lines with exit 2") {
  Workspace ws;
  const auto runFile = ws.file("run.txt", "garbage line\n");
  const auto qrels = ws.file("qrels.txt", kQrels);
  const auto r = run("eval --run " + runFile.string() + " --qrels " + qrels.string());
  CHECK(r.status == 2);
  CHECK(r.output.find(":1:") != std::string::npos);
}

TEST_CASE("gridsearch smoke test on a tiny corpus") {
  Workspace ws;
  const auto corpus = ws.file("corpus.jsonl", kCorpus);
  const auto topics = ws.file("topics.jsonl", kTopics);
  const auto qrels = ws.file("qrels.txt", kQrels);
  const auto r = run("gridsearch --corpus " + corpus.string() + " --topics " + topics.string() + " --qrels " + qrels.string() + " --max-level 3 --bit-bound 16 --k 10");
  CHECK(r.status == 0);
  CHECK(r.output.find("admissible configurations:") != std::string::npos);
  CHECK(r.output.find("x1") != std::string::npos);

  // parallel execution merges deterministically
  const auto parallel = run("gridsearch --corpus " + corpus.string() + " --topics " + topics.string() + " --qrels " + qrels.string() + " --max-level 3 --bit-bound 16 --k 10 --workers 4");
  CHECK(parallel.status == 0);
  CHECK(parallel.output == r.output);
}

int main(int argc, char** argv) {
  doctest::Context context;
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    --argc;
  }
  context.applyCommandLine(argc, argv);
  return context.run();
}
