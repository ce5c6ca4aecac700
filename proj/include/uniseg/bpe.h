#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "uniseg/corpus.h"

namespace uniseg {

enum class Pretokenize { Whitespace, WhitespacePunct };

Pretokenize parse_pretokenize(const std::string& s);

// Whitespace split; in WhitespacePunct mode every punctuation codepoint
// (general category P*) additionally becomes its own token.
std::vector<std::string> pretokenize(const std::string& line, Pretokenize mode);

// Pre-tokenized word -> count dictionary. Words are stored without the
// end-of-word marker; the marker is a single symbol appended at training
// and segmentation time. Entry order is first appearance in the corpus.
class WordCountTable {
 public:
  struct Entry {
    std::string word;  // marker excluded
    std::uint64_t count;
  };

  explicit WordCountTable(std::string marker = "_");

  void add(const std::string& word, std::uint64_t count = 1);

  const std::string& marker() const { return marker_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::string marker_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct MergeRule {
  std::string left;
  std::string right;
  std::string merged;  // always left + right
  std::uint64_t frequency;  // pair frequency at the time of the merge
};

struct MergeList {
  std::string marker = "_";
  std::vector<MergeRule> rules;
  std::vector<std::string> alphabet;  // initial symbols, first-appearance order

  std::size_t size() const { return rules.size(); }
};

// Ordered subword pieces of one word; pieces concatenate to word + marker.
struct Segmentation {
  std::vector<std::string> pieces;
};

struct TrainOptions {
  // Merging frequency-1 pairs only manufactures corpus-specific junk
  // symbols, so training stops when the best pair drops below this.
  std::uint64_t min_pair_frequency = 2;
  int threads = 1;
};

WordCountTable count_words(const TextStream& stream, Pretokenize mode,
                           const std::string& marker = "_", int threads = 1);

// Iteratively merges the most frequent adjacent symbol pair over the current
// symbolization. Frequencies count left-to-right non-overlapping occurrences
// (a run of k identical symbols holds floor(k/2) occurrences of its pair).
// Equal frequencies break toward the pair whose first occurrence comes
// earliest: lowest word index in the table, then leftmost position.
MergeList train(const WordCountTable& counts, std::size_t num_merges,
                const TrainOptions& options = {});

// Runs train() until the realized vocabulary (distinct symbols present in
// the rewritten corpus) reaches target_vocab or pairs are exhausted.
MergeList train_to_size(const WordCountTable& counts, std::size_t target_vocab,
                        const TrainOptions& options = {});

// Applies a fixed MergeList to words. Rules fire in learned order, each
// rewriting all adjacent occurrences left-to-right. Unknown characters stay
// single-codepoint pieces. Caches per-word results.
class Segmenter {
 public:
  explicit Segmenter(const MergeList& merges);
  ~Segmenter();

  Segmentation segment_word(const std::string& word);
  std::string segment_line(const std::string& line, Pretokenize mode);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Segmentation segment_word(const std::string& word, const MergeList& merges);
TextStream segment_text(const TextStream& stream, const MergeList& merges, Pretokenize mode,
                        int threads = 1);

struct VocabEntry {
  std::string symbol;
  std::uint64_t frequency;
};

// Distinct symbols present after applying merges to the counting corpus,
// sorted by descending frequency then first occurrence.
std::vector<VocabEntry> vocabulary_of(const WordCountTable& counts, const MergeList& merges);

void save_merges(const MergeList& merges, std::ostream& out);
void save_merges(const MergeList& merges, const std::string& path);
MergeList load_merges(std::istream& in, const std::string& origin = "<stream>");
MergeList load_merges(const std::string& path);

void save_vocab(const std::vector<VocabEntry>& vocab, std::ostream& out);
std::vector<VocabEntry> load_vocab(std::istream& in, const std::string& origin = "<stream>");
std::vector<VocabEntry> load_vocab(const std::string& path);

}  // namespace uniseg
