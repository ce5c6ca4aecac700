#include "uniseg/romanize.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "uniseg/error.h"

namespace uniseg {

Fallback parse_fallback(const std::string& s) {
  if (s == "pass" || s == "pass-through") return Fallback::PassThrough;
  if (s == "strip" || s == "strip-diacritics") return Fallback::StripDiacritics;
  throw Error("bad-flag", "unknown fallback '" + s + "' (expected pass|strip)");
}

RomanizationTable::RomanizationTable(std::string name) : name_(std::move(name)) {}

void RomanizationTable::add_rule(const std::string& source, const std::string& target) {
  if (source.empty()) throw Error("empty-source", "rule source must be non-empty");
  for (char c : target) {
    if (c < 0x20 || c > 0x7E) {
      throw Error("non-ascii-target",
                  "rule target for '" + source + "' must be printable ASCII");
    }
  }
  CodepointSeq cps = nfc(decode_utf8(source));
  for (std::size_t idx : by_first_[cps[0]]) {
    if (rules_[idx].source == cps) {
      throw Error("duplicate-source", "rule source '" + source + "' appears twice");
    }
  }
  rules_.push_back({std::move(cps), target});
  auto& bucket = by_first_[rules_.back().source[0]];
  bucket.push_back(rules_.size() - 1);
  std::stable_sort(bucket.begin(), bucket.end(), [&](std::size_t a, std::size_t b) {
    return rules_[a].source.size() > rules_[b].source.size();
  });
}

const RomanizationTable::Rule* RomanizationTable::match(const CodepointSeq& cps,
                                                        std::size_t i) const {
  auto it = by_first_.find(cps[i]);
  if (it == by_first_.end()) return nullptr;
  for (std::size_t idx : it->second) {
    const Rule& rule = rules_[idx];
    if (rule.source.size() <= cps.size() - i &&
        std::equal(rule.source.begin(), rule.source.end(), cps.begin() + static_cast<std::ptrdiff_t>(i))) {
      return &rule;
    }
  }
  return nullptr;
}

RomanizationTable load_table(std::istream& in, const std::string& origin) {
  RomanizationTable table(origin);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error("malformed-rule",
                  origin + ": line " + std::to_string(lineno) + " must be 'source<TAB>target'");
    }
    try {
      table.add_rule(line.substr(0, tab), line.substr(tab + 1));
    } catch (const Error& e) {
      throw Error(e.name(), origin + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return table;
}

RomanizationTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  return load_table(in, path);
}

std::string romanize_text(const std::string& text, const RomanizationTable& table,
                          Fallback fallback) {
  CodepointSeq cps = nfc(decode_utf8(text));
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    if (const auto* rule = table.match(cps, i)) {
      out += rule->target;
      i += rule->source.size();
      continue;
    }
    char32_t cp = cps[i++];
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    if (fallback == Fallback::StripDiacritics) {
      CodepointSeq base = nfd(CodepointSeq(1, cp));
      for (char32_t b : base) {
        if (!is_mark(b)) out += encode_utf8(b);
      }
    } else {
      out += encode_utf8(cp);
    }
  }
  return out;
}

}  // namespace uniseg
