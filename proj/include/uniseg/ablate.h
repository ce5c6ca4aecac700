#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

namespace uniseg {

// Injective codepoint substitution used to build control corpora whose
// vocabularies cannot share letter subwords with the originals.
struct CharMap {
  std::map<char32_t, char32_t> pairs;
  std::uint64_t seed = 0;
};

constexpr char32_t kCjkBlockFirst = 0x4E00;
constexpr char32_t kCjkBlockLast = 0x9FFF;

// Default domain: ASCII letters, case-distinct. include_digits extends it.
std::set<char32_t> latin_alphabet(bool include_digits = false);

// Seed-deterministic injective map from the alphabet into the CJK Unified
// Ideographs block: a partial Fisher-Yates shuffle of the block, assigned to
// the alphabet in ascending codepoint order.
CharMap build_cjk_map(const std::set<char32_t>& alphabet, std::uint64_t seed);

// Replaces mapped codepoints; everything else passes through. Codepoint
// count is preserved.
std::string apply_map(const std::string& text, const CharMap& map);

CharMap invert(const CharMap& map);

// TSV `U+XXXX<TAB>U+XXXX` with header `#uniseg-cjkmap v1 seed=<n>`.
void save_map(const CharMap& map, std::ostream& out);
void save_map(const CharMap& map, const std::string& path);
CharMap load_map(std::istream& in, const std::string& origin = "<stream>");
CharMap load_map(const std::string& path);

}  // namespace uniseg
