#include "phoc/index.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "phoc/error.hpp"

namespace fs = std::filesystem;

namespace phoc {

namespace {

constexpr const char* kMagic = "PHOCIDX1";
constexpr const char* kPostingsMagic = "PHOCPST1";
constexpr int kFormatVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw LoadError("truncated index file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw LoadError("truncated index file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw LoadError("cannot open " + p.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

std::int64_t InvertedIndex::lookup(const std::string& label) const {
  const auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), label);
  if (it == vocabulary.end() || *it != label) return -1;
  return it - vocabulary.begin();
}

InvertedIndex build_index(const std::vector<FormulaLayout>& corpus,
                          const PhocConfig& cfg, LevelSelection sel) {
  InvertedIndex idx;
  idx.configString = config_to_string(cfg);
  idx.selection = sel;
  idx.layout = bit_layout(cfg, sel);

  std::map<std::string, std::vector<Posting>> lists;
  for (const auto& f : corpus) {
    const auto ref = static_cast<std::uint32_t>(idx.idTable.size());
    idx.idTable.push_back(f.id);
    const FormulaPhoc enc = encode_formula(f, idx.layout);
    idx.normTable.push_back(enc.norm);
    for (const auto& [label, word] : enc.perSymbol) {
      lists[label].push_back({ref, word});
    }
  }
  idx.vocabulary.reserve(lists.size());
  idx.postings.reserve(lists.size());
  for (auto& [label, postings] : lists) {
    idx.vocabulary.push_back(label);
    idx.postings.push_back(std::move(postings));  // already sorted by ref
  }
  return idx;
}

void write_index(const InvertedIndex& idx, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path base(dir);

  {
    std::ofstream meta(base / "meta");
    if (!meta) throw Error("cannot write " + (base / "meta").string());
    meta << kMagic << "\n"
         << "version " << kFormatVersion << "\n"
         << "config " << idx.configString << "\n"
         << "levels " << to_string(idx.selection) << "\n"
         << "bits " << idx.layout.width() << "\n"
         << "formulas " << idx.idTable.size() << "\n"
         << "vocab " << idx.vocabulary.size() << "\n";
  }
  {
    std::ofstream vocab(base / "vocab");
    for (const auto& label : idx.vocabulary) vocab << label << "\n";
  }
  {
    std::ofstream ids(base / "ids");
    for (const auto& id : idx.idTable) ids << id << "\n";
  }
  {
    std::ofstream norms(base / "norms", std::ios::binary);
    for (std::uint32_t n : idx.normTable) put_u32(norms, n);
  }
  {
    std::ofstream postings(base / "postings", std::ios::binary);
    postings.write(kPostingsMagic, 8);
    put_u32(postings, static_cast<std::uint32_t>(idx.configString.size()));
    postings.write(idx.configString.data(),
                   static_cast<std::streamsize>(idx.configString.size()));
    // Words take ceil(width/8) bytes so index size tracks the bit width.
    const int wordBytes = (idx.layout.width() + 7) / 8;
    for (const auto& list : idx.postings) {
      put_u64(postings, list.size());
      for (const auto& p : list) {
        put_u32(postings, p.formulaRef);
        for (int i = 0; i < wordBytes; ++i) {
          const char b = static_cast<char>((p.word >> (8 * i)) & 0xff);
          postings.write(&b, 1);
        }
      }
    }
  }
}

InvertedIndex read_index(const std::string& dir) {
  const fs::path base(dir);
  const auto metaLines = read_lines(base / "meta");
  if (metaLines.empty() || metaLines[0] != kMagic)
    throw LoadError(dir + ": bad index magic");

  InvertedIndex idx;
  std::uint64_t formulaCount = 0, vocabCount = 0;
  int bits = -1, version = -1;
  for (std::size_t i = 1; i < metaLines.size(); ++i) {
    std::istringstream ss(metaLines[i]);
    std::string key;
    ss >> key;
    if (key == "version") ss >> version;
    else if (key == "config") ss >> idx.configString;
    else if (key == "levels") {
      std::string sel;
      ss >> sel;
      idx.selection = parse_level_selection(sel);
    } else if (key == "bits") ss >> bits;
    else if (key == "formulas") ss >> formulaCount;
    else if (key == "vocab") ss >> vocabCount;
  }
  if (version != kFormatVersion)
    throw LoadError(dir + ": unsupported index version " + std::to_string(version));
  idx.layout = bit_layout(parse_config(idx.configString), idx.selection);
  if (idx.layout.width() != bits)
    throw LoadError(dir + ": meta bit width disagrees with config");

  idx.vocabulary = read_lines(base / "vocab");
  idx.idTable = read_lines(base / "ids");
  if (idx.vocabulary.size() != vocabCount || idx.idTable.size() != formulaCount)
    throw LoadError(dir + ": meta counts disagree with vocab/ids files");

  {
    std::ifstream norms(base / "norms", std::ios::binary);
    if (!norms) throw LoadError("cannot open " + (base / "norms").string());
    idx.normTable.reserve(formulaCount);
    for (std::uint64_t i = 0; i < formulaCount; ++i) idx.normTable.push_back(get_u32(norms));
  }
  {
    std::ifstream postings(base / "postings", std::ios::binary);
    if (!postings) throw LoadError("cannot open " + (base / "postings").string());
    char magic[8];
    if (!postings.read(magic, 8) || std::memcmp(magic, kPostingsMagic, 8) != 0)
      throw LoadError(dir + ": bad postings magic");
    const std::uint32_t cfgLen = get_u32(postings);
    std::string cfg(cfgLen, '\0');
    if (!postings.read(cfg.data(), cfgLen)) throw LoadError("truncated index file");
    if (cfg != idx.configString)
      throw LoadError(dir + ": postings config '" + cfg + "' disagrees with meta '" +
                      idx.configString + "'");
    const int wordBytes = (idx.layout.width() + 7) / 8;
    idx.postings.resize(idx.vocabulary.size());
    for (auto& list : idx.postings) {
      const std::uint64_t n = get_u64(postings);
      list.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint32_t ref = get_u32(postings);
        unsigned char wb[8] = {0};
        if (!postings.read(reinterpret_cast<char*>(wb), wordBytes))
          throw LoadError("truncated index file");
        std::uint64_t word = 0;
        for (int bi = 0; bi < wordBytes; ++bi) word |= std::uint64_t(wb[bi]) << (8 * bi);
        if (ref >= idx.idTable.size())
          throw LoadError(dir + ": posting references unknown formula");
        list.push_back({ref, word});
      }
    }
    if (postings.peek() != EOF) throw LoadError(dir + ": trailing bytes in postings");
  }
  return idx;
}

IndexStats stats(const InvertedIndex& idx, const std::string& dir) {
  IndexStats s;
  s.formulaCount = idx.idTable.size();
  s.vocabularySize = idx.vocabulary.size();
  for (const auto& list : idx.postings) s.postingCount += list.size();
  s.bitWidth = idx.layout.width();
  if (!dir.empty()) {
    for (const char* name : {"meta", "vocab", "ids", "norms", "postings"}) {
      const fs::path p = fs::path(dir) / name;
      if (fs::exists(p)) s.bytesOnDisk += fs::file_size(p);
    }
  }
  return s;
}

}  // namespace phoc
