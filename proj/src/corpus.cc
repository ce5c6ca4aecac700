#include "uniseg/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "uniseg/error.h"
#include "uniseg/rng.h"
#include "uniseg/unicode.h"

namespace uniseg {

namespace {

std::vector<std::string> read_lines(std::istream& in, const std::string& origin) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!is_valid_utf8(line)) {
      throw Error("encoding", origin + ": line " + std::to_string(lines.size() + 1) +
                                  " is not valid UTF-8");
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_lines_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  return read_lines(in, path);
}

}  // namespace

SampleMode parse_sample_mode(const std::string& s) {
  if (s == "head") return SampleMode::Head;
  if (s == "random") return SampleMode::Random;
  throw Error("bad-flag", "unknown sample mode '" + s + "' (expected head|random)");
}

Sides parse_sides(const std::string& s) {
  if (s == "source") return Sides::Source;
  if (s == "target") return Sides::Target;
  if (s == "both") return Sides::Both;
  throw Error("bad-flag", "unknown sides '" + s + "' (expected source|target|both)");
}

ParallelCorpus load_parallel_tsv(const std::string& path, LoadReport* report) {
  auto lines = read_lines_from_file(path);
  ParallelCorpus corpus;
  LoadReport rep;
  rep.lines_read = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) {
      ++rep.empty_skipped;
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error("malformed-row",
                  path + ": line " + std::to_string(i + 1) + " must contain exactly one tab");
    }
    SentencePair pair{line.substr(0, tab), line.substr(tab + 1)};
    if (pair.source.empty() || pair.target.empty()) {
      ++rep.empty_skipped;
      continue;
    }
    corpus.pairs.push_back(std::move(pair));
  }
  rep.pairs_loaded = corpus.pairs.size();
  if (report) *report = rep;
  return corpus;
}

ParallelCorpus load_parallel_two_file(const std::string& source_path,
                                      const std::string& target_path, LoadReport* report) {
  auto src = read_lines_from_file(source_path);
  auto tgt = read_lines_from_file(target_path);
  if (src.size() != tgt.size()) {
    throw Error("length-mismatch", source_path + " has " + std::to_string(src.size()) +
                                       " lines but " + target_path + " has " +
                                       std::to_string(tgt.size()));
  }
  ParallelCorpus corpus;
  LoadReport rep;
  rep.lines_read = src.size();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].empty() || tgt[i].empty()) {
      ++rep.empty_skipped;
      continue;
    }
    corpus.pairs.push_back({std::move(src[i]), std::move(tgt[i])});
  }
  rep.pairs_loaded = corpus.pairs.size();
  if (report) *report = rep;
  return corpus;
}

TextStream read_text(std::istream& in, LoadReport* report) {
  auto lines = read_lines(in, "<stream>");
  LoadReport rep;
  rep.lines_read = lines.size();
  rep.pairs_loaded = lines.size();
  if (report) *report = rep;
  return TextStream{std::move(lines)};
}

TextStream load_text(const std::string& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  auto lines = read_lines(in, path);
  LoadReport rep;
  rep.lines_read = lines.size();
  rep.pairs_loaded = lines.size();
  if (report) *report = rep;
  return TextStream{std::move(lines)};
}

ParallelCorpus sample(const ParallelCorpus& corpus, std::size_t n, std::uint64_t seed,
                      SampleMode mode) {
  ParallelCorpus out;
  out.language_tag = corpus.language_tag;
  std::size_t take = std::min(n, corpus.size());
  if (mode == SampleMode::Head) {
    out.pairs.assign(corpus.pairs.begin(), corpus.pairs.begin() + static_cast<std::ptrdiff_t>(take));
    return out;
  }
  std::vector<std::size_t> indices(corpus.size());
  std::iota(indices.begin(), indices.end(), 0);
  std::nth_element(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(take),
                   indices.end(), [seed](std::size_t a, std::size_t b) {
                     std::uint64_t ka = splitmix64_at(seed, a);
                     std::uint64_t kb = splitmix64_at(seed, b);
                     return ka != kb ? ka < kb : a < b;
                   });
  indices.resize(take);
  std::sort(indices.begin(), indices.end());
  out.pairs.reserve(take);
  for (std::size_t i : indices) out.pairs.push_back(corpus.pairs[i]);
  return out;
}

ParallelCorpus concat(const std::vector<ParallelCorpus>& corpora) {
  if (corpora.empty()) throw Error("empty-list", "concat requires at least one corpus");
  ParallelCorpus out;
  for (const auto& c : corpora) {
    out.pairs.insert(out.pairs.end(), c.pairs.begin(), c.pairs.end());
    if (!c.language_tag.empty()) {
      if (!out.language_tag.empty()) out.language_tag += '+';
      out.language_tag += c.language_tag;
    }
  }
  return out;
}

TextStream flatten_bilingual(const ParallelCorpus& corpus, Sides sides) {
  TextStream out;
  if (sides == Sides::Source || sides == Sides::Both) {
    for (const auto& p : corpus.pairs) out.lines.push_back(p.source);
  }
  if (sides == Sides::Target || sides == Sides::Both) {
    for (const auto& p : corpus.pairs) out.lines.push_back(p.target);
  }
  return out;
}

void write_parallel_tsv(const ParallelCorpus& corpus, std::ostream& out) {
  for (const auto& p : corpus.pairs) out << p.source << '\t' << p.target << '\n';
}

void write_text(const TextStream& stream, std::ostream& out) {
  for (const auto& line : stream.lines) out << line << '\n';
}

}  // namespace uniseg
