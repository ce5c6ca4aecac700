#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "uniseg/unicode.h"

namespace uniseg {

enum class Fallback { PassThrough, StripDiacritics };

Fallback parse_fallback(const std::string& s);

// Ordered longest-match transliteration rules. Sources are codepoint
// sequences in composed (NFC) form; targets are printable ASCII. ASCII input
// maps to itself unless a rule overrides it.
class RomanizationTable {
 public:
  explicit RomanizationTable(std::string name = "");

  // An empty target deletes the source sequence.
  void add_rule(const std::string& source, const std::string& target);

  const std::string& name() const { return name_; }
  std::size_t size() const { return rules_.size(); }

  // Longest matching rule at position i of cps, or nullptr.
  struct Rule {
    CodepointSeq source;
    std::string target;
  };
  const Rule* match(const CodepointSeq& cps, std::size_t i) const;

 private:
  std::string name_;
  std::vector<Rule> rules_;
  // first codepoint -> rule indices sorted by descending source length
  std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

// TSV `source<TAB>target`, `#` comments and blank lines allowed.
RomanizationTable load_table(std::istream& in, const std::string& origin = "<stream>");
RomanizationTable load_table(const std::string& path);

// Greedy longest-match left-to-right replacement after NFC composition.
// Unmatched non-ASCII codepoints pass through, or are canonically decomposed
// with combining marks dropped under StripDiacritics. Outputs are never
// re-scanned, so romanization is idempotent on its own output.
std::string romanize_text(const std::string& text, const RomanizationTable& table,
                          Fallback fallback = Fallback::PassThrough);

}  // namespace uniseg
