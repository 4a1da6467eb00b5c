#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace wstc {

using TermId = std::uint32_t;

/// One free-text comment as read from disk.
struct RawComment {
  std::string id;
  std::string text;
  std::optional<std::vector<std::string>> gold;
};

enum class CorpusFormat { jsonl, csv };

/// Picks the format from the extension: ".csv" is CSV, anything else JSONL.
CorpusFormat corpus_format_for(const std::filesystem::path& path);

/// Reads a corpus file. Throws ParseError (with line number) on malformed records and
/// DataError on duplicate ids.
std::vector<RawComment> load_corpus(const std::filesystem::path& path, CorpusFormat format);
std::vector<RawComment> parse_corpus(std::istream& in, CorpusFormat format,
                                     const std::string& source_name = "<corpus>");
/// Reads one RFC 4180 record (quoted fields may span lines). Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& lineno,
                     const std::string& source);

void write_corpus_jsonl(std::ostream& out, std::span<const RawComment> comments);

/// Corpus-level spelling corrector. A token missing from the lexicon is replaced by
/// the most frequent corpus token at edit distance 1 whose frequency is at least
/// `min_ratio` times its own.
class SpellCorrector {
 public:
  SpellCorrector(std::unordered_map<std::string, std::size_t> counts,
                 std::unordered_set<std::string> lexicon, double min_ratio = 5.0);

  std::string correct(const std::string& token) const;

 private:
  std::unordered_map<std::string, std::size_t> counts_;
  std::unordered_set<std::string> lexicon_;
  double min_ratio_;
};

struct PreprocessOptions {
  std::unordered_set<std::string> stopwords;
  std::unordered_map<std::string, std::string> contractions;
  bool stem = true;
  bool spell_correct = false;
  std::shared_ptr<const SpellCorrector> corrector;

  /// Embedded stopword list and contraction table, stemming on, spelling off.
  static PreprocessOptions defaults();
};

/// Contraction expansion and lowercasing followed by a split on non-alphanumeric
/// characters. Bytes >= 0x80 are kept inside tokens.
std::vector<std::string> raw_tokens(std::string_view text, const PreprocessOptions& options);

/// Full token pipeline without the short-document filter:
/// contractions -> lowercase -> tokenize -> spelling -> stopwords -> stemming.
/// Stems that coincide with a stopword are dropped as well.
std::vector<std::string> pipeline_tokens(std::string_view text, const PreprocessOptions& options);

/// Adjacent pairs of surviving tokens, joined by a single space.
std::vector<std::string> form_bigrams(std::span<const std::string> tokens);

/// A comment after preprocessing. Always holds at least two tokens.
struct ProcessedDoc {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> bigrams;
  std::optional<std::vector<std::string>> gold;
};

/// Returns nullopt ("removed") when one or fewer tokens survive.
std::optional<ProcessedDoc> preprocess(const RawComment& raw, const PreprocessOptions& options);

/// Seed terms go through the same pipeline; the key is the unigram or the
/// space-joined bigram. nullopt means nothing survived.
std::optional<std::string> preprocess_seed_term(std::string_view term,
                                                const PreprocessOptions& options);

/// Builds a corrector from the lowercased token counts of `comments`.
std::shared_ptr<const SpellCorrector> make_spell_corrector(
    std::span<const RawComment> comments, const PreprocessOptions& options,
    std::unordered_set<std::string> lexicon);

/// Unigram and bigram terms in one dense, lexicographically ordered index space.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Keeps every term with document frequency >= min_df, plus each term in
  /// `always_keep` that occurs in at least one document. Throws DataError on an
  /// empty corpus and UsageError when min_df is 0.
  static Vocabulary build(std::span<const ProcessedDoc> docs, std::size_t min_df,
                          std::span<const std::string> always_keep = {});

  /// Rebuilds a vocabulary from serialized parts (model files).
  static Vocabulary from_parts(std::vector<std::string> terms, std::vector<std::size_t> df,
                               std::size_t num_docs);

  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_[id]; }
  std::size_t df(TermId id) const { return df_[id]; }
  bool is_bigram(TermId id) const;
  std::size_t size() const { return terms_.size(); }
  std::size_t num_docs() const { return num_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& document_frequencies() const { return df_; }

  /// "term<TAB>df" lines in index order, preceded by a "#docs<TAB>N" header.
  std::string serialize() const;

 private:
  void reindex();

  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::size_t num_docs_ = 0;
  std::unordered_map<std::string, TermId> index_;
};

/// In-vocabulary term ids of a document, in text order.
struct DocTerms {
  std::vector<TermId> unigrams;
  std::vector<TermId> bigrams;
};

DocTerms index_doc(const ProcessedDoc& doc, const Vocabulary& vocab);

struct SparseEntry {
  TermId term;
  double tf;      // raw count
  double weight;  // tf-idf after row normalization
};

/// Sparse docs x terms tf-idf matrix; rows sorted by term id.
struct TfIdfMatrix {
  std::size_t num_terms = 0;
  std::vector<std::vector<SparseEntry>> rows;
  std::vector<double> row_norms;  // L2 norm of each row before normalization

  std::size_t num_docs() const { return rows.size(); }
};

/// Smoothed inverse document frequency ln((1 + N) / (1 + df)) + 1.
double smoothed_idf(std::size_t df, std::size_t num_docs);

/// tf(d,t) * idf(t), rows L2-normalized. Throws DataError if `docs` is empty.
TfIdfMatrix tfidf(std::span<const DocTerms> docs, const Vocabulary& vocab);

/// One tf-idf row from arbitrary term counts, restricted to `keep` when given.
std::vector<SparseEntry> tfidf_row(std::span<const TermId> terms, const Vocabulary& vocab,
                                   const std::vector<bool>* keep = nullptr);

/// Everything an engine needs from a corpus.
struct PreparedCorpus {
  std::vector<RawComment> comments;      // all records, file order
  std::vector<ProcessedDoc> docs;        // kept documents
  std::vector<std::string> removed_ids;  // comments with <= 1 surviving token
  Vocabulary vocab;
  std::vector<DocTerms> terms;           // aligned with docs
  TfIdfMatrix matrix;                    // aligned with docs
};

/// Preprocesses, builds the vocabulary (seed keys always retained) and the tf-idf
/// matrix. Throws DataError when no document survives preprocessing.
PreparedCorpus prepare_corpus(std::vector<RawComment> comments, const PreprocessOptions& options,
                              std::size_t min_df, std::span<const std::string> seed_keys);

}  // namespace wstc
