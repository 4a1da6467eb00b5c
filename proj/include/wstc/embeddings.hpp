#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "wstc/corpus.hpp"

namespace wstc {

/// Word vectors from a rank-d factorization of the positive PMI co-occurrence matrix.
struct StaticEmbeddings {
  std::size_t dim = 0;
  Eigen::MatrixXd vectors;        // vocab_size x dim, row = term id
  std::vector<bool> has_vector;   // false for bigrams and words with no co-occurrence
  std::vector<double> eigenvalues;

  double cosine(TermId a, TermId b) const;
};

/// PPMI of symmetric window-5 co-occurrence counts over in-vocabulary unigrams, factorized
/// by Lanczos (full reorthogonalization) into its top-d positive eigenpairs; vectors are
/// U * sqrt(lambda). Each factor's largest-magnitude entry is made positive.
/// Throws UsageError if dim < 2 or dim exceeds the number of unigram terms.
StaticEmbeddings train_static_embeddings(std::span<const DocTerms> docs, const Vocabulary& vocab,
                                         std::size_t dim, std::size_t window = 5);

enum class RecordKind : std::uint8_t { document = 0, seed = 1 };

/// Contents of a WSTCEMB1 file: document vectors and seed-term vectors.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  /// Throws FormatError on a duplicate id of the same kind or a wrong dimension.
  void add(RecordKind kind, std::string id, std::vector<float> vec);

  const std::vector<float>* document(const std::string& id) const;
  const std::vector<float>* seed(const std::string& term) const;
  std::size_t num_documents() const { return doc_index_.size(); }
  std::size_t num_seeds() const { return seed_index_.size(); }
  std::size_t size() const { return records_.size(); }

  struct Record {
    RecordKind kind;
    std::string id;
    std::vector<float> vec;
  };
  const std::vector<Record>& records() const { return records_; }

 private:
  std::size_t dim_;
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> doc_index_;
  std::unordered_map<std::string, std::size_t> seed_index_;
};

/// Layout: "WSTCEMB1", u32 record_count, u32 dim, then per record u16 id length, id bytes,
/// u8 kind, dim x f32; all little-endian, no padding. Throws FormatError on bad magic,
/// dim 0, truncation, unknown kind, non-finite values or trailing bytes.
EmbeddingTable read_embeddings(std::istream& in, const std::string& source = "<embeddings>");
EmbeddingTable load_embeddings(const std::filesystem::path& path);
void write_embeddings(std::ostream& out, const EmbeddingTable& table);
void save_embeddings(const std::filesystem::path& path, const EmbeddingTable& table);

/// Throws DataError naming the first document id or seed term without a vector.
void validate_coverage(const EmbeddingTable& table, std::span<const std::string> doc_ids,
                       std::span<const std::string> seed_terms);

/// Double-precision copy of a vector.
Eigen::VectorXd to_eigen(const std::vector<float>& v);

}  // namespace wstc
