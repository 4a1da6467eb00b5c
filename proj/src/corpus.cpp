#include "wstc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wstc/error.hpp"
#include "wstc/text.hpp"
#include "wstc/util.hpp"

namespace wstc {

using nlohmann::json;

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

namespace {

void check_unique(std::vector<RawComment>& out, const std::string& source, std::size_t line,
                  std::set<std::string>& seen) {
  const std::string& id = out.back().id;
  if (!seen.insert(id).second) {
    throw DataError(source + ":" + std::to_string(line) + ": duplicate comment id \"" + id + "\"");
  }
}

std::vector<RawComment> parse_jsonl(std::istream& in, const std::string& source) {
  std::vector<RawComment> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(source, lineno, "record is not a JSON object");
    auto id = record.find("id");
    if (id == record.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw ParseError(source, lineno, "missing or empty \"id\" field");
    }
    auto text = record.find("text");
    if (text == record.end() || !text->is_string()) {
      throw ParseError(source, lineno, "missing \"text\" field");
    }
    RawComment c{id->get<std::string>(), text->get<std::string>(), std::nullopt};
    if (auto gold = record.find("gold"); gold != record.end() && !gold->is_null()) {
      if (!gold->is_array()) throw ParseError(source, lineno, "\"gold\" must be an array");
      std::vector<std::string> labels;
      for (const auto& g : *gold) {
        if (!g.is_string()) throw ParseError(source, lineno, "\"gold\" entries must be strings");
        labels.push_back(g.get<std::string>());
      }
      c.gold = std::move(labels);
    }
    out.push_back(std::move(c));
    check_unique(out, source, lineno, seen);
  }
  return out;
}

}  // namespace

// RFC 4180 fields; quoted fields may span lines. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& lineno,
                     const std::string& source) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  const std::size_t start_line = lineno + 1;
  int ch;
  while ((ch = in.get()) != EOF) {
    any = true;
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++lineno;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++lineno;
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (in_quotes) throw ParseError(source, start_line, "unterminated quoted field");
  if (!any) return false;
  ++lineno;
  fields.push_back(std::move(field));
  return true;
}

namespace {

std::vector<RawComment> parse_csv(std::istream& in, const std::string& source) {
  std::vector<RawComment> out;
  std::set<std::string> seen;
  std::vector<std::string> fields;
  std::size_t lineno = 0;
  if (!read_csv_record(in, fields, lineno, source)) return out;
  int id_col = -1, text_col = -1, gold_col = -1;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string name = trim(fields[i]);
    if (name == "id") id_col = static_cast<int>(i);
    if (name == "text") text_col = static_cast<int>(i);
    if (name == "gold") gold_col = static_cast<int>(i);
  }
  if (id_col < 0 || text_col < 0) throw ParseError(source, 1, "header must contain id and text columns");
  while (read_csv_record(in, fields, lineno, source)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    const auto need = static_cast<std::size_t>(std::max(id_col, text_col)) + 1;
    if (fields.size() < need) throw ParseError(source, lineno, "missing \"text\" field");
    RawComment c{trim(fields[id_col]), fields[text_col], std::nullopt};
    if (c.id.empty()) throw ParseError(source, lineno, "missing or empty \"id\" field");
    if (gold_col >= 0 && static_cast<std::size_t>(gold_col) < fields.size()) {
      std::vector<std::string> labels;
      const std::string raw = trim(fields[gold_col]);
      if (!raw.empty()) {
        for (const auto& part : split(raw, ';')) {
          std::string label = trim(part);
          if (!label.empty()) labels.push_back(std::move(label));
        }
      }
      c.gold = std::move(labels);
    }
    out.push_back(std::move(c));
    check_unique(out, source, lineno, seen);
  }
  return out;
}

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

// Curly apostrophes become ASCII; the rest of U+2000..U+203F becomes a space.
std::string normalize_punctuation(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
      const auto c3 = static_cast<unsigned char>(text[i + 2]);
      out += (c3 == 0x98 || c3 == 0x99) ? '\'' : ' ';
      i += 2;
      continue;
    }
    out += text[i];
  }
  return out;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string expand_contractions(std::string_view text,
                                const std::unordered_map<std::string, std::string>& table) {
  if (table.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!(std::isalpha(c) || c == '\'')) {
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() &&
           (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '\'')) {
      ++j;
    }
    const std::string_view word = text.substr(i, j - i);
    auto hit = table.find(to_lower_ascii(word));
    if (hit != table.end()) {
      out += hit->second;
    } else {
      out += word;
    }
    i = j;
  }
  return out;
}

}  // namespace

std::vector<RawComment> parse_corpus(std::istream& in, CorpusFormat format,
                                     const std::string& source_name) {
  return format == CorpusFormat::csv ? parse_csv(in, source_name) : parse_jsonl(in, source_name);
}

std::vector<RawComment> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return parse_corpus(in, format, path.string());
}

void write_corpus_jsonl(std::ostream& out, std::span<const RawComment> comments) {
  for (const auto& c : comments) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["text"] = c.text;
    if (c.gold) j["gold"] = *c.gold;
    out << j.dump() << '\n';
  }
}

SpellCorrector::SpellCorrector(std::unordered_map<std::string, std::size_t> counts,
                               std::unordered_set<std::string> lexicon, double min_ratio)
    : counts_(std::move(counts)), lexicon_(std::move(lexicon)), min_ratio_(min_ratio) {}

std::string SpellCorrector::correct(const std::string& token) const {
  if (lexicon_.count(token)) return token;
  auto own_it = counts_.find(token);
  const double own = own_it == counts_.end() ? 0.0 : static_cast<double>(own_it->second);
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::set<std::string> candidates;
  for (std::size_t i = 0; i <= token.size(); ++i) {
    if (i < token.size()) {
      std::string del = token;
      del.erase(i, 1);
      candidates.insert(del);
      if (i + 1 < token.size()) {
        std::string tr = token;
        std::swap(tr[i], tr[i + 1]);
        candidates.insert(tr);
      }
      for (char a : kAlphabet) {
        std::string sub = token;
        sub[i] = a;
        candidates.insert(sub);
      }
    }
    for (char a : kAlphabet) {
      std::string ins = token;
      ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), a);
      candidates.insert(ins);
    }
  }
  candidates.erase(token);
  std::string best = token;
  std::size_t best_count = 0;
  for (const auto& cand : candidates) {
    auto it = counts_.find(cand);
    if (it == counts_.end() || cand.empty()) continue;
    if (static_cast<double>(it->second) < min_ratio_ * std::max(own, 1.0)) continue;
    if (it->second > best_count) {  // set order breaks ties lexicographically
      best = cand;
      best_count = it->second;
    }
  }
  return best;
}

PreprocessOptions PreprocessOptions::defaults() {
  PreprocessOptions o;
  o.stopwords = default_stopwords();
  o.contractions = default_contractions();
  return o;
}

std::vector<std::string> raw_tokens(std::string_view text, const PreprocessOptions& options) {
  const std::string expanded = expand_contractions(normalize_punctuation(text), options.contractions);
  const std::string lowered = to_lower_ascii(expanded);
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : lowered) {
    if (is_token_byte(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> pipeline_tokens(std::string_view text, const PreprocessOptions& options) {
  std::vector<std::string> out;
  for (auto& tok : raw_tokens(text, options)) {
    std::string t = (options.spell_correct && options.corrector) ? options.corrector->correct(tok) : tok;
    if (options.stopwords.count(t)) continue;
    if (options.stem) t = light_stem(t);
    if (t.empty() || options.stopwords.count(t)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> form_bigrams(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) out.push_back(tokens[i] + " " + tokens[i + 1]);
  return out;
}

std::optional<ProcessedDoc> preprocess(const RawComment& raw, const PreprocessOptions& options) {
  std::vector<std::string> tokens = pipeline_tokens(raw.text, options);
  if (tokens.size() <= 1) return std::nullopt;
  ProcessedDoc doc;
  doc.id = raw.id;
  doc.bigrams = form_bigrams(tokens);
  doc.tokens = std::move(tokens);
  doc.gold = raw.gold;
  return doc;
}

std::optional<std::string> preprocess_seed_term(std::string_view term, const PreprocessOptions& options) {
  const std::vector<std::string> tokens = pipeline_tokens(term, options);
  if (tokens.empty()) return std::nullopt;
  if (tokens.size() == 1) return tokens[0];
  return tokens[0] + " " + tokens[1];
}

std::shared_ptr<const SpellCorrector> make_spell_corrector(std::span<const RawComment> comments,
                                                           const PreprocessOptions& options,
                                                           std::unordered_set<std::string> lexicon) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& c : comments) {
    for (auto& tok : raw_tokens(c.text, options)) ++counts[tok];
  }
  for (const auto& s : options.stopwords) lexicon.insert(s);
  return std::make_shared<SpellCorrector>(std::move(counts), std::move(lexicon));
}

Vocabulary Vocabulary::build(std::span<const ProcessedDoc> docs, std::size_t min_df,
                             std::span<const std::string> always_keep) {
  if (min_df == 0) throw UsageError("min_df must be >= 1");
  if (docs.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  std::map<std::string, std::size_t> df;  // ordered: lexicographic indices
  for (const auto& d : docs) {
    std::set<std::string_view> seen;
    for (const auto& t : d.tokens) seen.insert(t);
    for (const auto& t : d.bigrams) seen.insert(t);
    for (auto t : seen) ++df[std::string(t)];
  }
  const std::set<std::string> keep(always_keep.begin(), always_keep.end());
  Vocabulary v;
  v.num_docs_ = docs.size();
  for (const auto& [term, count] : df) {
    if (count >= min_df || keep.count(term)) {
      v.terms_.push_back(term);
      v.df_.push_back(count);
    }
  }
  v.reindex();
  return v;
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> terms, std::vector<std::size_t> df,
                                  std::size_t num_docs) {
  if (terms.size() != df.size()) throw DataError("vocabulary terms and df differ in length");
  Vocabulary v;
  v.terms_ = std::move(terms);
  v.df_ = std::move(df);
  v.num_docs_ = num_docs;
  v.reindex();
  return v;
}

void Vocabulary::reindex() {
  index_.clear();
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], static_cast<TermId>(i));
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Vocabulary::is_bigram(TermId id) const { return terms_[id].find(' ') != std::string::npos; }

std::string Vocabulary::serialize() const {
  std::ostringstream out;
  out << "#docs\t" << num_docs_ << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) out << terms_[i] << '\t' << df_[i] << '\n';
  return out.str();
}

DocTerms index_doc(const ProcessedDoc& doc, const Vocabulary& vocab) {
  DocTerms out;
  for (const auto& t : doc.tokens) {
    if (auto id = vocab.find(t)) out.unigrams.push_back(*id);
  }
  for (const auto& t : doc.bigrams) {
    if (auto id = vocab.find(t)) out.bigrams.push_back(*id);
  }
  return out;
}

double smoothed_idf(std::size_t df, std::size_t num_docs) {
  return std::log((1.0 + static_cast<double>(num_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

std::vector<SparseEntry> tfidf_row(std::span<const TermId> terms, const Vocabulary& vocab,
                                   const std::vector<bool>* keep) {
  std::map<TermId, double> counts;
  for (TermId t : terms) {
    if (keep && !(*keep)[t]) continue;
    counts[t] += 1.0;
  }
  std::vector<SparseEntry> row;
  row.reserve(counts.size());
  double norm2 = 0.0;
  for (const auto& [t, tf] : counts) {
    const double w = tf * smoothed_idf(vocab.df(t), vocab.num_docs());
    row.push_back({t, tf, w});
    norm2 += w * w;
  }
  const double norm = std::sqrt(norm2);
  if (norm > 0.0) {
    for (auto& e : row) e.weight /= norm;
  }
  return row;
}

TfIdfMatrix tfidf(std::span<const DocTerms> docs, const Vocabulary& vocab) {
  if (docs.empty()) throw DataError("tf-idf requires at least one document");
  TfIdfMatrix m;
  m.num_terms = vocab.size();
  m.rows.reserve(docs.size());
  m.row_norms.reserve(docs.size());
  for (const auto& d : docs) {
    std::vector<TermId> all(d.unigrams);
    all.insert(all.end(), d.bigrams.begin(), d.bigrams.end());
    auto row = tfidf_row(all, vocab);
    double norm2 = 0.0;
    for (const auto& e : row) {
      const double raw = e.tf * smoothed_idf(vocab.df(e.term), vocab.num_docs());
      norm2 += raw * raw;
    }
    m.row_norms.push_back(std::sqrt(norm2));
    m.rows.push_back(std::move(row));
  }
  return m;
}

PreparedCorpus prepare_corpus(std::vector<RawComment> comments, const PreprocessOptions& options,
                              std::size_t min_df, std::span<const std::string> seed_keys) {
  PreparedCorpus pc;
  pc.comments = std::move(comments);
  for (const auto& c : pc.comments) {
    if (auto doc = preprocess(c, options)) {
      pc.docs.push_back(std::move(*doc));
    } else {
      pc.removed_ids.push_back(c.id);
    }
  }
  if (pc.docs.empty()) throw DataError("no document has more than one token after preprocessing");
  pc.vocab = Vocabulary::build(pc.docs, min_df, seed_keys);
  pc.terms.reserve(pc.docs.size());
  for (const auto& d : pc.docs) pc.terms.push_back(index_doc(d, pc.vocab));
  pc.matrix = tfidf(pc.terms, pc.vocab);
  return pc;
}

}  // namespace wstc
