#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace uniseg {

// Token-indexed matrix of embedding vectors, one row per token.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::vector<std::string> tokens, std::vector<double> values, std::size_t dim);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }

  const double* row(std::size_t i) const { return values_.data() + i * dim_; }
  std::vector<double> row_copy(std::size_t i) const;
  bool has_token(const std::string& token) const;
  std::size_t index_of(const std::string& token) const;  // throws unknown-token

  void append_row(const std::string& token, const std::vector<double>& values);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> values_;  // row-major, size() * dim()
  std::size_t dim_ = 0;
};

enum class FreshInit { Zero, Uniform };

struct FreshInitSpec {
  FreshInit policy = FreshInit::Uniform;
  double range = 0.1;  // uniform draws from [-range, range)
  std::uint64_t seed = 0;
};

// Fresh rows are a pure function of (seed, output row index, dimension):
// row i, column j is the j-th draw of SplitMix64 seeded at seed + (i+1)*phi.
std::vector<double> fresh_row(const FreshInitSpec& init, std::size_t row_index, std::size_t dim);

// Identity hand-off: the child keeps the fixed universal vocabulary.
EmbeddingTable remap_universal(const EmbeddingTable& parent);

// The i-th most frequent child token takes the row of the i-th most frequent
// parent token; surplus child tokens get fresh rows.
EmbeddingTable remap_frequency(const EmbeddingTable& parent,
                               const std::vector<std::string>& parent_freq_order,
                               const std::vector<std::string>& child_freq_order,
                               const FreshInitSpec& init = {});

// Parent rows kept bit-exactly; child tokens not already present are
// appended in child order with fresh rows.
EmbeddingTable remap_union(const EmbeddingTable& parent,
                           const std::vector<std::string>& child_vocab,
                           const FreshInitSpec& init = {});

struct DiffReport {
  std::vector<std::string> preserved;   // token kept its own row bit-exactly
  std::vector<std::string> reassigned;  // row changed, or token took another token's row
  std::vector<std::string> fresh;       // token and row both new
};

DiffReport diff_report(const EmbeddingTable& before, const EmbeddingTable& after);

std::string to_text(const DiffReport& report);
std::string to_json(const DiffReport& report);

// File format: first line `V D`, then V lines `token d1 ... dD`. Values are
// serialized with shortest round-trip precision; reading restores the exact
// doubles that were written.
void save_embeddings(const EmbeddingTable& table, std::ostream& out);
void save_embeddings(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings(std::istream& in, const std::string& origin = "<stream>");
EmbeddingTable load_embeddings(const std::string& path);

}  // namespace uniseg
