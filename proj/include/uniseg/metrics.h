#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uniseg/bpe.h"
#include "uniseg/corpus.h"

namespace uniseg {

// A word is over-segmented when its segmentation has more pieces than half
// its character length: piece count includes the marker-bearing piece,
// character length excludes the marker.
bool is_over_segmented(const std::string& word, const Segmentation& segmentation,
                       const std::string& marker);

struct OsrDetail {
  std::string word;
  std::uint64_t occurrences;
  std::size_t piece_count;
  std::size_t char_length;
  bool over_segmented;
};

struct OsrReport {
  double rate = 0.0;
  std::uint64_t words_total = 0;
  std::uint64_t words_over_segmented = 0;
  std::optional<std::vector<OsrDetail>> per_word_detail;
};

struct OsrOptions {
  Pretokenize pretokenize = Pretokenize::WhitespacePunct;
  std::size_t min_word_length = 1;
  bool by_types = false;  // aggregate unique word types instead of occurrences
  bool per_word_detail = false;
  int threads = 1;
};

OsrReport osr(const TextStream& stream, const MergeList& merges, const OsrOptions& options = {});

struct SharingReport {
  std::set<std::string> shared;
  std::set<std::string> only_a;
  std::set<std::string> only_b;
  double jaccard = 0.0;  // 1.0 when both vocabularies are empty
};

SharingReport shared_subwords(const std::set<std::string>& vocab_a,
                              const std::set<std::string>& vocab_b);

struct HistogramReport {
  std::map<std::size_t, std::uint64_t> by_piece_count;  // piece count -> occurrences
  std::uint64_t words_total = 0;
  std::optional<double> mean_pieces_per_word;
  // fraction of pieces whose content (trailing marker stripped) is one codepoint
  std::optional<double> singleton_piece_fraction;
};

struct HistogramOptions {
  Pretokenize pretokenize = Pretokenize::WhitespacePunct;
  int threads = 1;
};

HistogramReport segment_histogram(const TextStream& stream, const MergeList& merges,
                                  const HistogramOptions& options = {});

std::string to_text(const OsrReport& report);
std::string to_json(const OsrReport& report);
std::string to_text(const SharingReport& report);
std::string to_json(const SharingReport& report);
std::string to_text(const HistogramReport& report);
std::string to_json(const HistogramReport& report);

}  // namespace uniseg
