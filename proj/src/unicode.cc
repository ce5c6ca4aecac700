#include "uniseg/unicode.h"

#include <algorithm>

#include "uniseg/error.h"

namespace uniseg {

namespace {

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

bool in_ranges(char32_t cp, const detail::CpRange* ranges, std::size_t n) {
  auto it = std::upper_bound(ranges, ranges + n, cp,
                             [](char32_t c, const detail::CpRange& r) { return c < r.lo; });
  return it != ranges && cp <= (it - 1)->hi;
}

[[noreturn]] void bad_utf8() { throw Error("encoding", "invalid UTF-8 byte sequence"); }

}  // namespace

CodepointSeq decode_utf8(std::string_view text) {
  CodepointSeq out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  while (i < text.size()) {
    unsigned char b = s[i];
    char32_t cp;
    std::size_t len;
    if (b < 0x80) {
      cp = b;
      len = 1;
    } else if ((b & 0xE0) == 0xC0) {
      cp = b & 0x1F;
      len = 2;
    } else if ((b & 0xF0) == 0xE0) {
      cp = b & 0x0F;
      len = 3;
    } else if ((b & 0xF8) == 0xF0) {
      cp = b & 0x07;
      len = 4;
    } else {
      bad_utf8();
    }
    if (i + len > text.size()) bad_utf8();
    for (std::size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) bad_utf8();
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    // overlong forms, surrogates, and values past U+10FFFF are invalid
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      bad_utf8();
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool is_valid_utf8(std::string_view text) {
  try {
    decode_utf8(text);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(const CodepointSeq& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += encode_utf8(cp);
  return out;
}

std::size_t codepoint_length(std::string_view text) { return decode_utf8(text).size(); }

std::uint8_t combining_class(char32_t cp) {
  auto it = std::lower_bound(detail::kCccEntries, detail::kCccEntries + detail::kCccCount, cp,
                             [](const detail::CccEntry& e, char32_t c) { return e.cp < c; });
  if (it != detail::kCccEntries + detail::kCccCount && it->cp == cp) return it->ccc;
  return 0;
}

bool is_mark(char32_t cp) { return in_ranges(cp, detail::kMarkRanges, detail::kMarkRangeCount); }

bool is_punctuation(char32_t cp) {
  return in_ranges(cp, detail::kPunctRanges, detail::kPunctRangeCount);
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace {

void decompose_cp(char32_t cp, CodepointSeq& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    int index = static_cast<int>(cp - kHangulSBase);
    out.push_back(kHangulLBase + index / kHangulNCount);
    out.push_back(kHangulVBase + (index % kHangulNCount) / kHangulTCount);
    int t = index % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  auto it =
      std::lower_bound(detail::kDecompEntries, detail::kDecompEntries + detail::kDecompCount, cp,
                       [](const detail::DecompEntry& e, char32_t c) { return e.cp < c; });
  if (it != detail::kDecompEntries + detail::kDecompCount && it->cp == cp) {
    for (std::uint32_t k = 0; k < it->length; ++k) {
      out.push_back(detail::kDecompPool[it->offset + k]);
    }
    return;
  }
  out.push_back(cp);
}

void canonical_order(CodepointSeq& seq) {
  // insertion sort restricted to runs of nonzero combining class; stable
  for (std::size_t i = 1; i < seq.size(); ++i) {
    std::uint8_t cc = combining_class(seq[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(seq[j - 1]) > cc) {
      std::swap(seq[j - 1], seq[j]);
      --j;
    }
  }
}

char32_t compose_pair(char32_t a, char32_t b) {
  // Hangul LV / LVT composition is algorithmic
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
      b < kHangulVBase + kHangulVCount) {
    return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
      (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
      b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  auto it = std::lower_bound(
      detail::kCompEntries, detail::kCompEntries + detail::kCompCount, std::make_pair(a, b),
      [](const detail::CompEntry& e, const std::pair<char32_t, char32_t>& key) {
        return e.first != key.first ? e.first < key.first : e.second < key.second;
      });
  if (it != detail::kCompEntries + detail::kCompCount && it->first == a && it->second == b) {
    return it->composite;
  }
  return 0;
}

}  // namespace

CodepointSeq nfd(const CodepointSeq& in) {
  CodepointSeq out;
  out.reserve(in.size());
  for (char32_t cp : in) decompose_cp(cp, out);
  canonical_order(out);
  return out;
}

CodepointSeq nfc(const CodepointSeq& in) {
  CodepointSeq seq = nfd(in);
  if (seq.empty()) return seq;
  CodepointSeq out;
  out.reserve(seq.size());
  out.push_back(seq[0]);
  std::ptrdiff_t last_starter = combining_class(seq[0]) == 0 ? 0 : -1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    char32_t cp = seq[i];
    std::uint8_t cc = combining_class(cp);
    if (last_starter >= 0) {
      bool blocked = static_cast<std::ptrdiff_t>(out.size()) - 1 > last_starter &&
                     combining_class(out.back()) >= cc;
      if (!blocked) {
        char32_t composite = compose_pair(out[static_cast<std::size_t>(last_starter)], cp);
        if (composite != 0) {
          out[static_cast<std::size_t>(last_starter)] = composite;
          continue;
        }
      }
    }
    out.push_back(cp);
    if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
  }
  return out;
}

std::string nfc_utf8(std::string_view text) { return encode_utf8(nfc(decode_utf8(text))); }

}  // namespace uniseg
