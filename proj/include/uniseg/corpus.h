#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace uniseg {

// Ordered sequence of sentences; the carrier for flattened corpus text.
struct TextStream {
  std::vector<std::string> lines;

  bool empty() const { return lines.empty(); }
  std::size_t size() const { return lines.size(); }
};

struct SentencePair {
  std::string source;
  std::string target;
};

// Aligned sentence pairs in stable order. Immutable once loaded.
struct ParallelCorpus {
  std::vector<SentencePair> pairs;
  std::string language_tag;

  std::size_t size() const { return pairs.size(); }
};

// Blank lines (or blank-sided rows) are dropped, not silently realigned;
// the report keeps the count so callers can notice.
struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t pairs_loaded = 0;
  std::size_t empty_skipped = 0;
};

enum class ParallelFormat { TwoFile, Tsv };
enum class SampleMode { Head, Random };
enum class Sides { Source, Target, Both };

SampleMode parse_sample_mode(const std::string& s);
Sides parse_sides(const std::string& s);

// TSV mode: `source<TAB>target` per line, exactly one tab.
ParallelCorpus load_parallel_tsv(const std::string& path, LoadReport* report = nullptr);

// Two-file mode: line-aligned source/target files of equal length.
ParallelCorpus load_parallel_two_file(const std::string& source_path,
                                      const std::string& target_path,
                                      LoadReport* report = nullptr);

TextStream load_text(const std::string& path, LoadReport* report = nullptr);
TextStream read_text(std::istream& in, LoadReport* report = nullptr);

// Head mode keeps the first n pairs. Random mode draws a seed-deterministic
// subset that preserves the original relative order: pair i gets the key
// splitmix64_at(seed, i) and the n smallest keys win.
ParallelCorpus sample(const ParallelCorpus& corpus, std::size_t n, std::uint64_t seed,
                      SampleMode mode);

ParallelCorpus concat(const std::vector<ParallelCorpus>& corpora);

TextStream flatten_bilingual(const ParallelCorpus& corpus, Sides sides);

void write_parallel_tsv(const ParallelCorpus& corpus, std::ostream& out);
void write_text(const TextStream& stream, std::ostream& out);

}  // namespace uniseg
