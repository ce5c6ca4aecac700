#include "uniseg/transfer.h"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "uniseg/error.h"
#include "uniseg/rng.h"

namespace uniseg {

EmbeddingTable::EmbeddingTable(std::vector<std::string> tokens, std::vector<double> values,
                               std::size_t dim)
    : tokens_(std::move(tokens)), values_(std::move(values)), dim_(dim) {
  if (values_.size() != tokens_.size() * dim_) {
    throw Error("dimension-mismatch", "value count does not match tokens * dim");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error("duplicate-token", "token '" + tokens_[i] + "' appears twice");
    }
  }
}

std::vector<double> EmbeddingTable::row_copy(std::size_t i) const {
  return std::vector<double>(row(i), row(i) + dim_);
}

bool EmbeddingTable::has_token(const std::string& token) const { return index_.count(token) != 0; }

std::size_t EmbeddingTable::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw Error("unknown-token", "no such token '" + token + "'");
  return it->second;
}

void EmbeddingTable::append_row(const std::string& token, const std::vector<double>& values) {
  if (tokens_.empty() && dim_ == 0) dim_ = values.size();
  if (values.size() != dim_) {
    throw Error("dimension-mismatch", "row for '" + token + "' has " +
                                          std::to_string(values.size()) + " values, expected " +
                                          std::to_string(dim_));
  }
  if (!index_.emplace(token, tokens_.size()).second) {
    throw Error("duplicate-token", "token '" + token + "' appears twice");
  }
  tokens_.push_back(token);
  values_.insert(values_.end(), values.begin(), values.end());
}

std::vector<double> fresh_row(const FreshInitSpec& init, std::size_t row_index, std::size_t dim) {
  std::vector<double> out(dim, 0.0);
  if (init.policy == FreshInit::Zero) return out;
  SplitMix64 rng(init.seed + (static_cast<std::uint64_t>(row_index) + 1) * 0x9E3779B97F4A7C15ULL);
  for (std::size_t j = 0; j < dim; ++j) {
    out[j] = (2.0 * rng.next_unit() - 1.0) * init.range;
  }
  return out;
}

EmbeddingTable remap_universal(const EmbeddingTable& parent) { return parent; }

EmbeddingTable remap_frequency(const EmbeddingTable& parent,
                               const std::vector<std::string>& parent_freq_order,
                               const std::vector<std::string>& child_freq_order,
                               const FreshInitSpec& init) {
  if (child_freq_order.empty()) {
    throw Error("empty-list", "child frequency order must be non-empty");
  }
  if (parent_freq_order.size() != parent.size()) {
    throw Error("permutation-mismatch", "parent frequency order has " +
                                            std::to_string(parent_freq_order.size()) +
                                            " tokens, parent table has " +
                                            std::to_string(parent.size()));
  }
  std::vector<std::size_t> order_rows;
  order_rows.reserve(parent_freq_order.size());
  std::unordered_set<std::string> seen;
  for (const auto& token : parent_freq_order) {
    if (!parent.has_token(token) || !seen.insert(token).second) {
      throw Error("permutation-mismatch",
                  "parent frequency order is not a permutation of the parent tokens ('" + token +
                      "')");
    }
    order_rows.push_back(parent.index_of(token));
  }
  EmbeddingTable out;
  for (std::size_t i = 0; i < child_freq_order.size(); ++i) {
    if (i < order_rows.size()) {
      out.append_row(child_freq_order[i], parent.row_copy(order_rows[i]));
    } else {
      out.append_row(child_freq_order[i], fresh_row(init, i, parent.dim()));
    }
  }
  return out;
}

EmbeddingTable remap_union(const EmbeddingTable& parent, const std::vector<std::string>& child_vocab,
                           const FreshInitSpec& init) {
  EmbeddingTable out = parent;
  for (const auto& token : child_vocab) {
    if (!out.has_token(token)) {
      out.append_row(token, fresh_row(init, out.size(), parent.dim()));
    }
  }
  return out;
}

namespace {

bool rows_equal(const double* a, const double* b, std::size_t dim) {
  return std::memcmp(a, b, dim * sizeof(double)) == 0;
}

}  // namespace

DiffReport diff_report(const EmbeddingTable& before, const EmbeddingTable& after) {
  DiffReport report;
  std::unordered_map<std::string, std::size_t> before_index;
  for (std::size_t i = 0; i < before.size(); ++i) before_index.emplace(before.tokens()[i], i);
  for (std::size_t i = 0; i < after.size(); ++i) {
    const std::string& token = after.tokens()[i];
    auto it = before_index.find(token);
    if (it != before_index.end()) {
      if (before.dim() == after.dim() && rows_equal(before.row(it->second), after.row(i), after.dim())) {
        report.preserved.push_back(token);
      } else {
        report.reassigned.push_back(token);
      }
      continue;
    }
    bool matches_some_row = false;
    if (before.dim() == after.dim()) {
      for (std::size_t j = 0; j < before.size() && !matches_some_row; ++j) {
        matches_some_row = rows_equal(before.row(j), after.row(i), after.dim());
      }
    }
    (matches_some_row ? report.reassigned : report.fresh).push_back(token);
  }
  return report;
}

std::string to_text(const DiffReport& report) {
  std::ostringstream out;
  out << "preserved: " << report.preserved.size() << '\n';
  out << "reassigned: " << report.reassigned.size() << '\n';
  out << "fresh: " << report.fresh.size() << '\n';
  auto list = [&](const char* label, const std::vector<std::string>& tokens) {
    out << label << ':';
    for (const auto& t : tokens) out << ' ' << t;
    out << '\n';
  };
  list("preserved_tokens", report.preserved);
  list("reassigned_tokens", report.reassigned);
  list("fresh_tokens", report.fresh);
  return out.str();
}

std::string to_json(const DiffReport& report) {
  nlohmann::json out{{"preserved", report.preserved},
                     {"reassigned", report.reassigned},
                     {"fresh", report.fresh}};
  return out.dump(2) + "\n";
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string& origin, std::size_t lineno) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error("malformed-embedding-file",
                origin + ": line " + std::to_string(lineno) + " has a malformed value");
  }
  return v;
}

}  // namespace

void save_embeddings(const EmbeddingTable& table, std::ostream& out) {
  out << table.size() << ' ' << table.dim() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.tokens()[i];
    const double* row = table.row(i);
    for (std::size_t j = 0; j < table.dim(); ++j) out << ' ' << format_double(row[j]);
    out << '\n';
  }
}

void save_embeddings(const EmbeddingTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  save_embeddings(table, out);
}

EmbeddingTable load_embeddings(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("malformed-embedding-file", origin + ": missing 'V D' header");
  }
  std::istringstream header(line);
  std::size_t v = 0, d = 0;
  if (!(header >> v >> d)) {
    throw Error("malformed-embedding-file", origin + ": missing 'V D' header");
  }
  EmbeddingTable table;
  std::size_t lineno = 1;
  for (std::size_t i = 0; i < v; ++i) {
    if (!std::getline(in, line)) {
      throw Error("malformed-embedding-file",
                  origin + ": expected " + std::to_string(v) + " rows, got " + std::to_string(i));
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos) {
      throw Error("malformed-embedding-file",
                  origin + ": line " + std::to_string(lineno) + " has no values");
    }
    std::string token = line.substr(0, sp);
    std::vector<double> values;
    values.reserve(d);
    std::size_t pos = sp + 1;
    while (pos <= line.size()) {
      std::size_t next = line.find(' ', pos);
      std::size_t end = next == std::string::npos ? line.size() : next;
      values.push_back(parse_double(std::string_view(line).substr(pos, end - pos), origin, lineno));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (values.size() != d) {
      throw Error("dimension-mismatch", origin + ": line " + std::to_string(lineno) + " has " +
                                            std::to_string(values.size()) + " values, expected " +
                                            std::to_string(d));
    }
    table.append_row(token, values);
  }
  return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  return load_embeddings(in, path);
}

}  // namespace uniseg
