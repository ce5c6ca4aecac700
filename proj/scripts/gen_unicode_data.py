#!/usr/bin/env python3
"""Regenerates src/unicode_data.cc from Python's unicodedata module.

Emits four sorted tables consumed by src/unicode.cc:
  - full canonical decompositions (NFD, Hangul excluded, handled algorithmically)
  - canonical combining classes (nonzero only)
  - primary composition pairs (derived via NFC probing, exclusions handled)
  - codepoint ranges for general categories M* (marks) and P* (punctuation)

Run from the repo root: python3 scripts/gen_unicode_data.py > src/unicode_data.cc
"""
import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def main():
    decomp = []   # (cp, [cps...]) full canonical decomposition
    ccc = []      # (cp, class)
    comp = []     # (a, b, composite)
    mark_ranges = []
    punct_ranges = []

    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)
        k = unicodedata.combining(ch)
        if k:
            ccc.append((cp, k))
        if not is_hangul_syllable(cp):
            nfd = unicodedata.normalize("NFD", ch)
            if nfd != ch:
                decomp.append((cp, [ord(c) for c in nfd]))
            raw = unicodedata.decomposition(ch)
            if raw and not raw.startswith("<"):
                parts = [int(p, 16) for p in raw.split()]
                if len(parts) == 2:
                    a, b = parts
                    if unicodedata.normalize("NFC", chr(a) + chr(b)) == ch:
                        comp.append((a, b, cp))

    def ranges_for(pred):
        out, start, prev = [], None, None
        for cp in range(MAX_CP):
            if 0xD800 <= cp <= 0xDFFF:
                hit = False
            else:
                hit = pred(chr(cp))
            if hit:
                if start is None:
                    start = cp
                prev = cp
            elif start is not None:
                out.append((start, prev))
                start = None
        if start is not None:
            out.append((start, prev))
        return out

    mark_ranges = ranges_for(lambda c: unicodedata.category(c).startswith("M"))
    punct_ranges = ranges_for(lambda c: unicodedata.category(c).startswith("P"))

    seq_pool = []
    seq_index = {}
    decomp_entries = []
    for cp, seq in decomp:
        key = tuple(seq)
        if key not in seq_index:
            seq_index[key] = len(seq_pool)
            seq_pool.extend(seq)
        decomp_entries.append((cp, seq_index[key], len(seq)))

    w = sys.stdout.write
    w("// Generated by scripts/gen_unicode_data.py (unicodedata %s). Do not edit.\n"
      % unicodedata.unidata_version)
    w('#include "uniseg/unicode.h"\n\n')
    w("namespace uniseg {\nnamespace detail {\n\n")

    w("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(seq_pool), 10):
        w("  " + ",".join("0x%X" % c for c in seq_pool[i:i + 10]) + ",\n")
    w("};\n\n")

    w("const DecompEntry kDecompEntries[] = {\n")
    for cp, off, n in decomp_entries:
        w("  {0x%X,%d,%d},\n" % (cp, off, n))
    w("};\n")
    w("const std::size_t kDecompCount = %d;\n\n" % len(decomp_entries))

    w("const CccEntry kCccEntries[] = {\n")
    for i in range(0, len(ccc), 6):
        w("  " + "".join("{0x%X,%d}," % e for e in ccc[i:i + 6]) + "\n")
    w("};\n")
    w("const std::size_t kCccCount = %d;\n\n" % len(ccc))

    comp.sort()
    w("const CompEntry kCompEntries[] = {\n")
    for a, b, c in comp:
        w("  {0x%X,0x%X,0x%X},\n" % (a, b, c))
    w("};\n")
    w("const std::size_t kCompCount = %d;\n\n" % len(comp))

    for name, ranges in (("Mark", mark_ranges), ("Punct", punct_ranges)):
        w("const CpRange k%sRanges[] = {\n" % name)
        for i in range(0, len(ranges), 6):
            w("  " + "".join("{0x%X,0x%X}," % r for r in ranges[i:i + 6]) + "\n")
        w("};\n")
        w("const std::size_t k%sRangeCount = %d;\n\n" % (name, len(ranges)))

    w("}  // namespace detail\n}  // namespace uniseg\n")


if __name__ == "__main__":
    main()
