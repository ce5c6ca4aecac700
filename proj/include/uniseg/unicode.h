#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uniseg {

using CodepointSeq = std::u32string;

namespace detail {

struct DecompEntry {
  char32_t cp;
  std::uint32_t offset;
  std::uint32_t length;
};

struct CccEntry {
  char32_t cp;
  std::uint8_t ccc;
};

struct CompEntry {
  char32_t first;
  char32_t second;
  char32_t composite;
};

struct CpRange {
  char32_t lo;
  char32_t hi;
};

extern const char32_t kDecompPool[];
extern const DecompEntry kDecompEntries[];
extern const std::size_t kDecompCount;
extern const CccEntry kCccEntries[];
extern const std::size_t kCccCount;
extern const CompEntry kCompEntries[];
extern const std::size_t kCompCount;
extern const CpRange kMarkRanges[];
extern const std::size_t kMarkRangeCount;
extern const CpRange kPunctRanges[];
extern const std::size_t kPunctRangeCount;

}  // namespace detail

// Strict UTF-8 decoding: rejects overlong forms, surrogates, and
// out-of-range values. Throws Error("encoding") on invalid input.
CodepointSeq decode_utf8(std::string_view text);
bool is_valid_utf8(std::string_view text);
std::string encode_utf8(const CodepointSeq& cps);
std::string encode_utf8(char32_t cp);

// Codepoint count of a UTF-8 string (throws on invalid input).
std::size_t codepoint_length(std::string_view text);

std::uint8_t combining_class(char32_t cp);
bool is_mark(char32_t cp);        // general category Mn/Mc/Me
bool is_punctuation(char32_t cp); // general category P*
bool is_whitespace(char32_t cp);

CodepointSeq nfd(const CodepointSeq& in);
CodepointSeq nfc(const CodepointSeq& in);

std::string nfc_utf8(std::string_view text);

}  // namespace uniseg
