#include "phoc/layout.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "json.hpp"
#include "phoc/error.hpp"

namespace phoc {

BoundingBox bounding_box(const FormulaLayout& f) {
  if (f.symbols.empty()) throw Error("bounding_box: formula has no symbols");
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();
  for (const auto& s : f.symbols) {
    x0 = std::min(x0, s.xLo());
    x1 = std::max(x1, s.xHi());
    y0 = std::min(y0, s.yLo());
    y1 = std::max(y1, s.yHi());
  }
  if (x1 <= x0) {
    const double c = (x0 + x1) / 2.0;
    x0 = c - 0.5;
    x1 = c + 0.5;
  }
  if (y1 <= y0) {
    const double c = (y0 + y1) / 2.0;
    y0 = c - 0.5;
    y1 = c + 0.5;
  }
  return {x0, y0, x1, y1};
}

FormulaLayout synthesize_linear_layout(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw Error("synthesize_linear_layout: empty token list");
  FormulaLayout f;
  f.id = "linear";
  f.symbols.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    f.symbols.push_back({tokens[i], static_cast<double>(i) + 0.5, 0.5, 1.0, 1.0});
  }
  return f;
}

FormulaLayout mirror_layout(const FormulaLayout& f) {
  const BoundingBox box = bounding_box(f);
  const double mid = box.centerX();
  FormulaLayout out = f;
  for (auto& s : out.symbols) s.cx = 2.0 * mid - s.cx;
  return out;
}

namespace {

std::vector<FormulaLayout> load_records(const std::string& path, bool allowQid) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<FormulaLayout> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    FormulaLayout f;
    try {
      const auto j = nlohmann::json::parse(line);
      if (allowQid && j.contains("qid")) {
        f.id = j.at("qid").get<std::string>();
      } else {
        f.id = j.at("id").get<std::string>();
      }
      for (const auto& js : j.at("symbols")) {
        SymbolPlacement s;
        s.label = js.at("label").get<std::string>();
        s.cx = js.at("cx").get<double>();
        s.cy = js.at("cy").get<double>();
        s.w = js.at("w").get<double>();
        s.h = js.at("h").get<double>();
        if (s.label.empty()) throw ParseError("empty symbol label");
        if (s.w < 0 || s.h < 0) throw ParseError("negative symbol extent");
        f.symbols.push_back(std::move(s));
      }
    } catch (const ParseError&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed record");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed record: " + e.what());
    }
    if (f.id.empty())
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty id");
    if (f.symbols.empty())
      throw ParseError(path + ":" + std::to_string(lineno) + ": formula has no symbols");
    if (!seen.insert(f.id).second)
      throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate id '" + f.id + "'");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<FormulaLayout> load_corpus(const std::string& path) {
  return load_records(path, /*allowQid=*/false);
}

std::vector<FormulaLayout> load_topics(const std::string& path) {
  return load_records(path, /*allowQid=*/true);
}

}  // namespace phoc
