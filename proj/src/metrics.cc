#include "uniseg/metrics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "parallel.h"
#include "uniseg/error.h"
#include "uniseg/unicode.h"

namespace uniseg {

bool is_over_segmented(const std::string& word, const Segmentation& segmentation,
                       const std::string& marker) {
  std::string joined;
  for (const auto& piece : segmentation.pieces) joined += piece;
  if (joined != word + marker) {
    throw Error("mismatch", "pieces do not reconstruct '" + word + marker + "'");
  }
  // strict: piece_count > char_length / 2, in exact integer arithmetic
  return 2 * segmentation.pieces.size() > codepoint_length(word);
}

namespace {

struct WordStats {
  std::string word;
  std::uint64_t occurrences = 0;
  std::size_t piece_count = 0;
  std::size_t char_length = 0;
  std::vector<std::string> pieces;
};

// Distinct tokens of the stream in first-appearance order, with occurrence
// counts and segmentations. Segmentation is partitioned across threads;
// exact integer aggregation keeps results independent of the thread count.
std::vector<WordStats> collect_word_stats(const TextStream& stream, const MergeList& merges,
                                          Pretokenize mode, int threads) {
  std::size_t chunks = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                               stream.lines.size()));
  std::vector<std::vector<std::pair<std::string, std::uint64_t>>> partial_orders(chunks);
  detail::parallel_chunks(stream.lines.size(), static_cast<int>(chunks),
                          [&](std::size_t c, std::size_t begin, std::size_t end) {
                            std::unordered_map<std::string, std::size_t> index;
                            auto& order = partial_orders[c];
                            for (std::size_t i = begin; i < end; ++i) {
                              for (auto& token : pretokenize(stream.lines[i], mode)) {
                                auto it = index.find(token);
                                if (it == index.end()) {
                                  index.emplace(token, order.size());
                                  order.emplace_back(std::move(token), 1);
                                } else {
                                  ++order[it->second].second;
                                }
                              }
                            }
                          });
  std::vector<WordStats> stats;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& order : partial_orders) {
    for (const auto& [word, count] : order) {
      auto it = index.find(word);
      if (it == index.end()) {
        index.emplace(word, stats.size());
        stats.push_back({word, count, 0, 0, {}});
      } else {
        stats[it->second].occurrences += count;
      }
    }
  }
  detail::parallel_chunks(stats.size(), threads,
                          [&](std::size_t, std::size_t begin, std::size_t end) {
                            Segmenter segmenter(merges);
                            for (std::size_t i = begin; i < end; ++i) {
                              auto seg = segmenter.segment_word(stats[i].word);
                              stats[i].piece_count = seg.pieces.size();
                              stats[i].char_length = codepoint_length(stats[i].word);
                              stats[i].pieces = std::move(seg.pieces);
                            }
                          });
  return stats;
}

nlohmann::json histogram_json(const HistogramReport& r) {
  nlohmann::json h = nlohmann::json::object();
  for (const auto& [pieces, count] : r.by_piece_count) h[std::to_string(pieces)] = count;
  nlohmann::json out{{"histogram", h}, {"words_total", r.words_total}};
  out["mean_pieces_per_word"] =
      r.mean_pieces_per_word ? nlohmann::json(*r.mean_pieces_per_word) : nlohmann::json(nullptr);
  out["singleton_piece_fraction"] = r.singleton_piece_fraction
                                        ? nlohmann::json(*r.singleton_piece_fraction)
                                        : nlohmann::json(nullptr);
  return out;
}

}  // namespace

OsrReport osr(const TextStream& stream, const MergeList& merges, const OsrOptions& options) {
  if (options.min_word_length < 1) {
    throw Error("bad-flag", "min-word-length must be at least 1");
  }
  auto stats = collect_word_stats(stream, merges, options.pretokenize, options.threads);
  OsrReport report;
  if (options.per_word_detail) report.per_word_detail.emplace();
  for (const auto& s : stats) {
    if (s.char_length < options.min_word_length) continue;
    bool over = 2 * s.piece_count > s.char_length;
    std::uint64_t weight = options.by_types ? 1 : s.occurrences;
    report.words_total += weight;
    if (over) report.words_over_segmented += weight;
    if (report.per_word_detail) {
      report.per_word_detail->push_back({s.word, s.occurrences, s.piece_count, s.char_length, over});
    }
  }
  report.rate = report.words_total == 0
                    ? 0.0
                    : static_cast<double>(report.words_over_segmented) /
                          static_cast<double>(report.words_total);
  return report;
}

SharingReport shared_subwords(const std::set<std::string>& vocab_a,
                              const std::set<std::string>& vocab_b) {
  SharingReport report;
  std::set_intersection(vocab_a.begin(), vocab_a.end(), vocab_b.begin(), vocab_b.end(),
                        std::inserter(report.shared, report.shared.end()));
  std::set_difference(vocab_a.begin(), vocab_a.end(), vocab_b.begin(), vocab_b.end(),
                      std::inserter(report.only_a, report.only_a.end()));
  std::set_difference(vocab_b.begin(), vocab_b.end(), vocab_a.begin(), vocab_a.end(),
                      std::inserter(report.only_b, report.only_b.end()));
  std::size_t union_size = report.shared.size() + report.only_a.size() + report.only_b.size();
  report.jaccard = union_size == 0
                       ? 1.0
                       : static_cast<double>(report.shared.size()) / static_cast<double>(union_size);
  return report;
}

HistogramReport segment_histogram(const TextStream& stream, const MergeList& merges,
                                  const HistogramOptions& options) {
  auto stats = collect_word_stats(stream, merges, options.pretokenize, options.threads);
  HistogramReport report;
  std::uint64_t piece_sum = 0;
  std::uint64_t pieces_total = 0;
  std::uint64_t singleton_pieces = 0;
  for (const auto& s : stats) {
    report.by_piece_count[s.piece_count] += s.occurrences;
    report.words_total += s.occurrences;
    piece_sum += s.piece_count * s.occurrences;
    for (const auto& piece : s.pieces) {
      std::string content = piece;
      if (content.size() >= merges.marker.size() &&
          content.compare(content.size() - merges.marker.size(), merges.marker.size(),
                          merges.marker) == 0) {
        content.erase(content.size() - merges.marker.size());
      }
      pieces_total += s.occurrences;
      if (codepoint_length(content) == 1) singleton_pieces += s.occurrences;
    }
  }
  if (report.words_total > 0) {
    report.mean_pieces_per_word =
        static_cast<double>(piece_sum) / static_cast<double>(report.words_total);
    report.singleton_piece_fraction =
        static_cast<double>(singleton_pieces) / static_cast<double>(pieces_total);
  }
  return report;
}

namespace {

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", rate);
  return buf;
}

}  // namespace

std::string to_text(const OsrReport& report) {
  std::ostringstream out;
  out << "words_total: " << report.words_total << '\n';
  out << "words_over_segmented: " << report.words_over_segmented << '\n';
  out << "rate: " << format_rate(report.rate) << '\n';
  if (report.per_word_detail) {
    for (const auto& d : *report.per_word_detail) {
      out << "word: " << d.word << " occurrences: " << d.occurrences
          << " pieces: " << d.piece_count << " chars: " << d.char_length
          << " over_segmented: " << (d.over_segmented ? "yes" : "no") << '\n';
    }
  }
  return out.str();
}

std::string to_json(const OsrReport& report) {
  nlohmann::json out{{"words_total", report.words_total},
                     {"words_over_segmented", report.words_over_segmented},
                     {"rate", report.rate}};
  if (report.per_word_detail) {
    nlohmann::json detail = nlohmann::json::array();
    for (const auto& d : *report.per_word_detail) {
      detail.push_back({{"word", d.word},
                        {"occurrences", d.occurrences},
                        {"pieces", d.piece_count},
                        {"chars", d.char_length},
                        {"over_segmented", d.over_segmented}});
    }
    out["per_word_detail"] = detail;
  }
  return out.dump(2) + "\n";
}

std::string to_text(const SharingReport& report) {
  std::ostringstream out;
  out << "shared: " << report.shared.size() << '\n';
  out << "only_a: " << report.only_a.size() << '\n';
  out << "only_b: " << report.only_b.size() << '\n';
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", report.jaccard);
  out << "jaccard: " << buf << '\n';
  auto list = [&](const char* label, const std::set<std::string>& symbols) {
    out << label << ':';
    for (const auto& s : symbols) out << ' ' << s;
    out << '\n';
  };
  list("shared_symbols", report.shared);
  return out.str();
}

std::string to_json(const SharingReport& report) {
  nlohmann::json out{{"shared", report.shared},
                     {"only_a", report.only_a},
                     {"only_b", report.only_b},
                     {"jaccard", report.jaccard}};
  return out.dump(2) + "\n";
}

std::string to_text(const HistogramReport& report) {
  std::ostringstream out;
  out << "words_total: " << report.words_total << '\n';
  for (const auto& [pieces, count] : report.by_piece_count) {
    out << "pieces." << pieces << ": " << count << '\n';
  }
  char buf[32];
  if (report.mean_pieces_per_word) {
    std::snprintf(buf, sizeof(buf), "%.6f", *report.mean_pieces_per_word);
    out << "mean_pieces_per_word: " << buf << '\n';
  } else {
    out << "mean_pieces_per_word: n/a\n";
  }
  if (report.singleton_piece_fraction) {
    std::snprintf(buf, sizeof(buf), "%.6f", *report.singleton_piece_fraction);
    out << "singleton_piece_fraction: " << buf << '\n';
  } else {
    out << "singleton_piece_fraction: n/a\n";
  }
  return out.str();
}

std::string to_json(const HistogramReport& report) { return histogram_json(report).dump(2) + "\n"; }

}  // namespace uniseg
