#include "uniseg/bpe.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "parallel.h"
#include "uniseg/error.h"
#include "uniseg/unicode.h"

namespace uniseg {

namespace {

void validate_marker(const std::string& marker) {
  if (marker.empty()) throw Error("bad-marker", "end-of-word marker must be non-empty");
  for (char32_t cp : decode_utf8(marker)) {
    if (is_whitespace(cp)) {
      throw Error("bad-marker", "end-of-word marker must not contain whitespace");
    }
  }
}

// Splits a word into single-codepoint symbol strings.
std::vector<std::string> char_symbols(const std::string& word) {
  std::vector<std::string> out;
  for (char32_t cp : decode_utf8(word)) out.push_back(encode_utf8(cp));
  return out;
}

// Enumerates left-to-right non-overlapping adjacent pairs: in a run of k
// identical symbols the pair (s,s) occurs floor(k/2) times, matching what a
// left-to-right rewrite of that pair would replace.
template <typename Seq, typename Fn>
void for_each_pair(const Seq& s, Fn&& fn) {
  bool prev_taken = false;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (prev_taken && s[i - 1] == s[i] && s[i] == s[i + 1]) {
      prev_taken = false;
      continue;
    }
    fn(i, s[i], s[i + 1]);
    prev_taken = true;
  }
}

}  // namespace

Pretokenize parse_pretokenize(const std::string& s) {
  if (s == "ws") return Pretokenize::Whitespace;
  if (s == "ws+punct") return Pretokenize::WhitespacePunct;
  throw Error("bad-flag", "unknown pretokenize mode '" + s + "' (expected ws|ws+punct)");
}

std::vector<std::string> pretokenize(const std::string& line, Pretokenize mode) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (char32_t cp : decode_utf8(line)) {
    if (is_whitespace(cp)) {
      flush();
    } else if (mode == Pretokenize::WhitespacePunct && is_punctuation(cp)) {
      flush();
      tokens.push_back(encode_utf8(cp));
    } else {
      current += encode_utf8(cp);
    }
  }
  flush();
  return tokens;
}

WordCountTable::WordCountTable(std::string marker) : marker_(std::move(marker)) {
  validate_marker(marker_);
}

void WordCountTable::add(const std::string& word, std::uint64_t count) {
  if (word.empty()) throw Error("empty-word", "cannot count an empty word");
  if (word.find(marker_) != std::string::npos) {
    throw Error("marker-collision",
                "input word '" + word + "' contains the end-of-word marker '" + marker_ + "'");
  }
  auto it = index_.find(word);
  if (it == index_.end()) {
    index_.emplace(word, entries_.size());
    entries_.push_back({word, count});
  } else {
    entries_[it->second].count += count;
  }
}

WordCountTable count_words(const TextStream& stream, Pretokenize mode, const std::string& marker,
                           int threads) {
  validate_marker(marker);
  std::vector<WordCountTable> partials;
  std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                                                     stream.lines.size()));
  partials.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) partials.emplace_back(marker);
  detail::parallel_chunks(stream.lines.size(), static_cast<int>(chunks),
                          [&](std::size_t c, std::size_t begin, std::size_t end) {
                            for (std::size_t i = begin; i < end; ++i) {
                              for (auto& token : pretokenize(stream.lines[i], mode)) {
                                partials[c].add(token);
                              }
                            }
                          });
  if (partials.size() == 1) return std::move(partials[0]);
  // merging in chunk order reproduces the sequential first-appearance order
  WordCountTable table(marker);
  for (const auto& partial : partials) {
    for (const auto& entry : partial.entries()) table.add(entry.word, entry.count);
  }
  return table;
}

namespace {

using SymbolId = std::uint32_t;
using PairKey = std::uint64_t;

constexpr PairKey pair_key(SymbolId l, SymbolId r) {
  return (static_cast<PairKey>(l) << 32) | r;
}

struct PairStat {
  std::uint64_t count = 0;
  std::set<std::uint32_t> words;  // indices of words currently containing the pair
};

class Trainer {
 public:
  Trainer(const WordCountTable& table, const TrainOptions& options)
      : table_(table), options_(options) {
    symbolize();
    build_pair_counts();
  }

  std::size_t alphabet_size() const { return alphabet_.size(); }

  MergeList run(std::size_t max_merges, std::size_t target_vocab) {
    MergeList out;
    out.marker = table_.marker();
    out.alphabet = alphabet_;
    while (out.rules.size() < max_merges) {
      if (target_vocab != 0 && vocab_size_ >= target_vocab) break;
      PairKey best_key = 0;
      std::uint64_t best_count = 0;
      std::uint32_t best_word = 0, best_pos = 0;
      for (const auto& [key, stat] : pairs_) {
        if (stat.count < best_count || stat.count < options_.min_pair_frequency) continue;
        if (emitted_.count(key)) continue;
        std::uint32_t w, pos;
        first_occurrence(key, stat, w, pos);
        if (stat.count > best_count || w < best_word || (w == best_word && pos < best_pos)) {
          best_key = key;
          best_count = stat.count;
          best_word = w;
          best_pos = pos;
        }
      }
      if (best_count == 0) break;
      SymbolId left = static_cast<SymbolId>(best_key >> 32);
      SymbolId right = static_cast<SymbolId>(best_key & 0xFFFFFFFFu);
      MergeRule rule{symbols_[left], symbols_[right], symbols_[left] + symbols_[right],
                     best_count};
      SymbolId merged = intern(rule.merged);
      emitted_.insert(best_key);
      std::set<std::uint32_t> affected = pairs_.at(best_key).words;
      for (std::uint32_t w : affected) {
        subtract_word(w);
        rewrite_word(w, left, right, merged);
        add_word(w);
      }
      out.rules.push_back(std::move(rule));
    }
    return out;
  }

 private:
  SymbolId intern(const std::string& s) {
    auto it = symbol_ids_.find(s);
    if (it != symbol_ids_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(s);
    symbol_ids_.emplace(s, id);
    occurrences_.push_back(0);
    return id;
  }

  void symbolize() {
    SymbolId marker_id = intern(table_.marker());
    (void)marker_id;
    words_.reserve(table_.size());
    weights_.reserve(table_.size());
    for (const auto& entry : table_.entries()) {
      std::vector<SymbolId> symbols;
      for (auto& piece : char_symbols(entry.word)) symbols.push_back(intern(piece));
      symbols.push_back(symbol_ids_.at(table_.marker()));
      for (SymbolId s : symbols) bump_occurrence(s, entry.count);
      words_.push_back(std::move(symbols));
      weights_.push_back(entry.count);
    }
    // first-appearance alphabet: the marker only counts if the corpus is
    // non-empty, and it appears at the end of the first word
    alphabet_.clear();
    std::unordered_set<SymbolId> seen;
    for (const auto& word : words_) {
      for (SymbolId s : word) {
        if (seen.insert(s).second) alphabet_.push_back(symbols_[s]);
      }
    }
  }

  void build_pair_counts() {
    std::size_t chunks = std::max<std::size_t>(
        1, std::min<std::size_t>(static_cast<std::size_t>(std::max(options_.threads, 1)),
                                 words_.size()));
    struct LocalStat {
      std::uint64_t count = 0;
      std::vector<std::uint32_t> words;
    };
    std::vector<std::unordered_map<PairKey, LocalStat>> locals(chunks);
    detail::parallel_chunks(
        words_.size(), static_cast<int>(chunks),
        [&](std::size_t c, std::size_t begin, std::size_t end) {
          auto& local = locals[c];
          for (std::size_t w = begin; w < end; ++w) {
            for_each_pair(words_[w], [&](std::size_t, SymbolId l, SymbolId r) {
              auto& stat = local[pair_key(l, r)];
              stat.count += weights_[w];
              if (stat.words.empty() || stat.words.back() != static_cast<std::uint32_t>(w)) {
                stat.words.push_back(static_cast<std::uint32_t>(w));
              }
            });
          }
        });
    for (auto& local : locals) {
      for (auto& [key, stat] : local) {
        auto& global = pairs_[key];
        global.count += stat.count;
        global.words.insert(stat.words.begin(), stat.words.end());
      }
    }
  }

  void bump_occurrence(SymbolId s, std::uint64_t by) {
    if (occurrences_[s] == 0) ++vocab_size_;
    occurrences_[s] += by;
  }

  void drop_occurrence(SymbolId s, std::uint64_t by) {
    occurrences_[s] -= by;
    if (occurrences_[s] == 0) --vocab_size_;
  }

  void first_occurrence(PairKey key, const PairStat& stat, std::uint32_t& word_out,
                        std::uint32_t& pos_out) const {
    SymbolId l = static_cast<SymbolId>(key >> 32);
    SymbolId r = static_cast<SymbolId>(key & 0xFFFFFFFFu);
    std::uint32_t w = *stat.words.begin();
    std::uint32_t pos = std::numeric_limits<std::uint32_t>::max();
    for_each_pair(words_[w], [&](std::size_t i, SymbolId a, SymbolId b) {
      if (pos == std::numeric_limits<std::uint32_t>::max() && a == l && b == r) {
        pos = static_cast<std::uint32_t>(i);
      }
    });
    word_out = w;
    pos_out = pos;
  }

  void subtract_word(std::uint32_t w) {
    std::uint64_t c = weights_[w];
    for_each_pair(words_[w], [&](std::size_t, SymbolId l, SymbolId r) {
      pairs_.at(pair_key(l, r)).count -= c;
    });
    for_each_pair(words_[w], [&](std::size_t, SymbolId l, SymbolId r) {
      auto it = pairs_.find(pair_key(l, r));
      if (it != pairs_.end()) {
        it->second.words.erase(w);
        if (it->second.count == 0) pairs_.erase(it);
      }
    });
  }

  void rewrite_word(std::uint32_t w, SymbolId left, SymbolId right, SymbolId merged) {
    std::uint64_t c = weights_[w];
    auto& word = words_[w];
    std::vector<SymbolId> out;
    out.reserve(word.size());
    std::size_t i = 0;
    while (i < word.size()) {
      if (i + 1 < word.size() && word[i] == left && word[i + 1] == right) {
        out.push_back(merged);
        drop_occurrence(left, c);
        drop_occurrence(right, c);
        bump_occurrence(merged, c);
        i += 2;
      } else {
        out.push_back(word[i]);
        ++i;
      }
    }
    word = std::move(out);
  }

  void add_word(std::uint32_t w) {
    std::uint64_t c = weights_[w];
    for_each_pair(words_[w], [&](std::size_t, SymbolId l, SymbolId r) {
      auto& stat = pairs_[pair_key(l, r)];
      stat.count += c;
      stat.words.insert(w);
    });
  }

  const WordCountTable& table_;
  TrainOptions options_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_ids_;
  std::vector<std::uint64_t> occurrences_;  // weighted, per symbol id
  std::vector<std::vector<SymbolId>> words_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::string> alphabet_;
  std::unordered_map<PairKey, PairStat> pairs_;
  std::unordered_set<PairKey> emitted_;
  std::size_t vocab_size_ = 0;
};

}  // namespace

MergeList train(const WordCountTable& counts, std::size_t num_merges,
                const TrainOptions& options) {
  Trainer trainer(counts, options);
  return trainer.run(num_merges, 0);
}

MergeList train_to_size(const WordCountTable& counts, std::size_t target_vocab,
                        const TrainOptions& options) {
  Trainer trainer(counts, options);
  if (target_vocab < trainer.alphabet_size()) {
    throw Error("target-too-small",
                "target vocabulary " + std::to_string(target_vocab) + " is below the alphabet size " +
                    std::to_string(trainer.alphabet_size()));
  }
  return trainer.run(std::numeric_limits<std::size_t>::max(), target_vocab);
}

struct Segmenter::Impl {
  struct StringPairHash {
    std::size_t operator()(const std::pair<std::string, std::string>& p) const {
      std::size_t h = std::hash<std::string>()(p.first);
      return h ^ (std::hash<std::string>()(p.second) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
    }
  };

  std::string marker;
  std::vector<MergeRule> rules;
  std::unordered_map<std::pair<std::string, std::string>, std::uint32_t, StringPairHash> rule_index;
  std::unordered_map<std::string, std::vector<std::string>> cache;

  std::vector<std::string> apply(const std::string& word) {
    std::vector<std::string> symbols = char_symbols(word);
    symbols.push_back(marker);
    // Rules are processed in learned order. The heap holds indices of rules
    // whose pair appeared at some point; popping in ascending index order is
    // equivalent to one sequential pass over the whole list.
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> pending;
    auto push_pair = [&](const std::string& a, const std::string& b) {
      auto it = rule_index.find({a, b});
      if (it != rule_index.end()) pending.push(it->second);
    };
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) push_pair(symbols[i], symbols[i + 1]);
    std::int64_t last = -1;
    while (!pending.empty()) {
      std::uint32_t j = pending.top();
      pending.pop();
      if (static_cast<std::int64_t>(j) <= last) continue;
      last = j;
      const MergeRule& rule = rules[j];
      std::vector<std::string> out;
      std::vector<std::size_t> merged_at;
      out.reserve(symbols.size());
      std::size_t i = 0;
      while (i < symbols.size()) {
        if (i + 1 < symbols.size() && symbols[i] == rule.left && symbols[i + 1] == rule.right) {
          merged_at.push_back(out.size());
          out.push_back(rule.merged);
          i += 2;
        } else {
          out.push_back(std::move(symbols[i]));
          ++i;
        }
      }
      if (merged_at.empty()) continue;
      symbols = std::move(out);
      for (std::size_t p : merged_at) {
        if (p > 0) push_pair(symbols[p - 1], symbols[p]);
        if (p + 1 < symbols.size()) push_pair(symbols[p], symbols[p + 1]);
      }
    }
    return symbols;
  }
};

Segmenter::Segmenter(const MergeList& merges) : impl_(new Impl) {
  validate_marker(merges.marker);
  impl_->marker = merges.marker;
  impl_->rules = merges.rules;
  for (std::size_t i = 0; i < impl_->rules.size(); ++i) {
    const auto& r = impl_->rules[i];
    auto [it, inserted] = impl_->rule_index.emplace(std::make_pair(r.left, r.right),
                                                    static_cast<std::uint32_t>(i));
    if (!inserted) {
      throw Error("duplicate-rule", "merge list repeats the pair '" + r.left + " " + r.right + "'");
    }
  }
}

Segmenter::~Segmenter() = default;

Segmentation Segmenter::segment_word(const std::string& word) {
  if (word.empty()) throw Error("empty-word", "cannot segment an empty word");
  if (word.find(impl_->marker) != std::string::npos) {
    throw Error("marker-collision",
                "word '" + word + "' contains the end-of-word marker '" + impl_->marker + "'");
  }
  auto it = impl_->cache.find(word);
  if (it == impl_->cache.end()) {
    it = impl_->cache.emplace(word, impl_->apply(word)).first;
  }
  return Segmentation{it->second};
}

std::string Segmenter::segment_line(const std::string& line, Pretokenize mode) {
  std::string out;
  for (const auto& token : pretokenize(line, mode)) {
    for (const auto& piece : segment_word(token).pieces) {
      if (!out.empty()) out += ' ';
      out += piece;
    }
  }
  return out;
}

Segmentation segment_word(const std::string& word, const MergeList& merges) {
  Segmenter segmenter(merges);
  return segmenter.segment_word(word);
}

TextStream segment_text(const TextStream& stream, const MergeList& merges, Pretokenize mode,
                        int threads) {
  TextStream out;
  out.lines.resize(stream.lines.size());
  std::size_t chunks = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                               stream.lines.size()));
  detail::parallel_chunks(stream.lines.size(), static_cast<int>(chunks),
                          [&](std::size_t, std::size_t begin, std::size_t end) {
                            Segmenter segmenter(merges);
                            for (std::size_t i = begin; i < end; ++i) {
                              out.lines[i] = segmenter.segment_line(stream.lines[i], mode);
                            }
                          });
  return out;
}

std::vector<VocabEntry> vocabulary_of(const WordCountTable& counts, const MergeList& merges) {
  Segmenter segmenter(merges);
  struct Acc {
    std::uint64_t frequency = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, Acc> acc;
  std::vector<std::string> order;
  for (const auto& entry : counts.entries()) {
    for (const auto& piece : segmenter.segment_word(entry.word).pieces) {
      auto it = acc.find(piece);
      if (it == acc.end()) {
        it = acc.emplace(piece, Acc{0, order.size()}).first;
        order.push_back(piece);
      }
      it->second.frequency += entry.count;
    }
  }
  std::vector<VocabEntry> out;
  out.reserve(order.size());
  for (const auto& symbol : order) out.push_back({symbol, acc.at(symbol).frequency});
  std::stable_sort(out.begin(), out.end(), [&](const VocabEntry& a, const VocabEntry& b) {
    return a.frequency > b.frequency;
  });
  return out;
}

void save_merges(const MergeList& merges, std::ostream& out) {
  out << "#uniseg-bpe v1 marker=" << merges.marker << '\n';
  for (const auto& r : merges.rules) {
    out << r.left << ' ' << r.right << ' ' << r.frequency << '\n';
  }
}

void save_merges(const MergeList& merges, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  save_merges(merges, out);
}

MergeList load_merges(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("malformed-merge-file", origin + ": empty merge file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string prefix = "#uniseg-bpe v1 marker=";
  if (line.rfind(prefix, 0) != 0 || line.size() == prefix.size()) {
    throw Error("malformed-merge-file",
                origin + ": expected header '#uniseg-bpe v1 marker=<marker>'");
  }
  MergeList merges;
  merges.marker = line.substr(prefix.size());
  validate_marker(merges.marker);
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream parts(line);
    std::string left, right, freq, extra;
    if (!(parts >> left >> right >> freq) || (parts >> extra)) {
      throw Error("malformed-merge-file",
                  origin + ": line " + std::to_string(lineno) + " must be 'left right frequency'");
    }
    std::uint64_t frequency = 0;
    try {
      frequency = std::stoull(freq);
    } catch (const std::exception&) {
      throw Error("malformed-merge-file",
                  origin + ": line " + std::to_string(lineno) + " has a non-numeric frequency");
    }
    if (!seen.insert({left, right}).second) {
      throw Error("duplicate-rule",
                  origin + ": line " + std::to_string(lineno) + " repeats a (left, right) pair");
    }
    merges.rules.push_back({left, right, left + right, frequency});
  }
  return merges;
}

MergeList load_merges(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  return load_merges(in, path);
}

void save_vocab(const std::vector<VocabEntry>& vocab, std::ostream& out) {
  for (const auto& e : vocab) out << e.symbol << '\t' << e.frequency << '\n';
}

std::vector<VocabEntry> load_vocab(std::istream& in, const std::string& origin) {
  std::vector<VocabEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error("malformed-vocab-file",
                  origin + ": line " + std::to_string(lineno) + " must be 'symbol<TAB>frequency'");
    }
    std::uint64_t frequency = 0;
    try {
      frequency = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw Error("malformed-vocab-file",
                  origin + ": line " + std::to_string(lineno) + " has a non-numeric frequency");
    }
    out.push_back({line.substr(0, tab), frequency});
  }
  return out;
}

std::vector<VocabEntry> load_vocab(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  return load_vocab(in, path);
}

}  // namespace uniseg
