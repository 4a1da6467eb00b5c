#include "wstc/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Sparse>

#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

double StaticEmbeddings::cosine(TermId a, TermId b) const {
  const auto va = vectors.row(a);
  const auto vb = vectors.row(b);
  const double na = va.norm();
  const double nb = vb.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return va.dot(vb) / (na * nb);
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Lanczos with full reorthogonalization. On breakdown the recursion restarts from a fresh
// vector orthogonal to the basis, so repeated eigenvalues are still reached.
void top_eigenpairs(const SpMat& a, std::size_t want, std::vector<double>& values, Eigen::MatrixXd& vecs) {
  const auto n = a.rows();
  const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(static_cast<std::size_t>(n), 4 * want + 100));
  Eigen::MatrixXd q(n, m);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples q_j and q_{j+1}
  Rng rng(0x57a71c5eedULL);
  auto fresh = [&](Eigen::Index cols) -> Eigen::VectorXd {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = standard_normal(rng);
      for (int pass = 0; pass < 2; ++pass) {
        if (cols > 0) v -= q.leftCols(cols) * (q.leftCols(cols).transpose() * v);
      }
      const double norm = v.norm();
      if (norm > 1e-8) return v / norm;
    }
    return Eigen::VectorXd::Zero(n);
  };

  q.col(0) = fresh(0);
  Eigen::Index steps = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::VectorXd w = a * q.col(j);
    const double aj = q.col(j).dot(w);
    alpha.push_back(aj);
    w -= aj * q.col(j);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    steps = j + 1;
    if (j + 1 == m) break;
    const double bj = w.norm();
    if (bj > 1e-10) {
      beta.push_back(bj);
      q.col(j + 1) = w / bj;
    } else {
      Eigen::VectorXd v = fresh(j + 1);
      if (v.squaredNorm() == 0.0) break;
      beta.push_back(0.0);
      q.col(j + 1) = v;
    }
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
  for (Eigen::Index j = 0; j < steps; ++j) {
    t(j, j) = alpha[static_cast<std::size_t>(j)];
    if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  const auto& evals = solver.eigenvalues();  // ascending
  values.clear();
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = steps - 1; k >= 0 && picked.size() < want; --k) {
    if (evals(k) <= 1e-10) break;
    values.push_back(evals(k));
    picked.push_back(k);
  }
  vecs = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(picked.size()));
  for (std::size_t c = 0; c < picked.size(); ++c) {
    vecs.col(static_cast<Eigen::Index>(c)) = q.leftCols(steps) * solver.eigenvectors().col(picked[c]);
  }
}

}  // namespace

StaticEmbeddings train_static_embeddings(std::span<const DocTerms> docs, const Vocabulary& vocab,
                                         std::size_t dim, std::size_t window) {
  std::size_t unigrams = 0;
  for (TermId id = 0; id < vocab.size(); ++id) {
    if (!vocab.is_bigram(id)) ++unigrams;
  }
  if (dim < 2) throw UsageError("embedding dimension must be >= 2");
  if (dim > unigrams) {
    throw UsageError("embedding dimension " + std::to_string(dim) + " exceeds the " +
                     std::to_string(unigrams) + " unigram terms");
  }

  std::map<std::pair<TermId, TermId>, double> counts;
  for (const auto& doc : docs) {
    const auto& seq = doc.unigrams;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size() && j <= i + window; ++j) {
        if (seq[i] == seq[j]) continue;
        counts[{seq[i], seq[j]}] += 1.0;
        counts[{seq[j], seq[i]}] += 1.0;
      }
    }
  }

  StaticEmbeddings emb;
  emb.dim = dim;
  emb.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab.size()), static_cast<Eigen::Index>(dim));
  emb.has_vector.assign(vocab.size(), false);
  if (counts.empty()) return emb;

  std::vector<double> row_sum(vocab.size(), 0.0);
  double total = 0.0;
  for (const auto& [key, c] : counts) {
    row_sum[key.first] += c;
    total += c;
  }
  std::vector<TermId> active;
  std::vector<Eigen::Index> dense(vocab.size(), -1);
  for (TermId id = 0; id < vocab.size(); ++id) {
    if (row_sum[id] > 0.0) {
      dense[id] = static_cast<Eigen::Index>(active.size());
      active.push_back(id);
    }
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& [key, c] : counts) {
    const double pmi = std::log(c * total / (row_sum[key.first] * row_sum[key.second]));
    if (pmi > 0.0) trips.emplace_back(dense[key.first], dense[key.second], pmi);
  }
  const auto n = static_cast<Eigen::Index>(active.size());
  SpMat ppmi(n, n);
  ppmi.setFromTriplets(trips.begin(), trips.end());

  Eigen::MatrixXd u;
  top_eigenpairs(ppmi, dim, emb.eigenvalues, u);
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Eigen::Index arg = 0;
    for (Eigen::Index r = 1; r < n; ++r) {
      if (std::abs(u(r, c)) > std::abs(u(arg, c))) arg = r;
    }
    if (u(arg, c) < 0.0) u.col(c) = -u.col(c);
    u.col(c) *= std::sqrt(emb.eigenvalues[static_cast<std::size_t>(c)]);
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const TermId id = active[static_cast<std::size_t>(r)];
    emb.vectors.row(id).head(u.cols()) = u.row(r);
    emb.has_vector[id] = emb.vectors.row(id).squaredNorm() > 0.0;
  }
  return emb;
}

void EmbeddingTable::add(RecordKind kind, std::string id, std::vector<float> vec) {
  if (vec.size() != dim_) {
    throw FormatError("vector for \"" + id + "\" has dimension " + std::to_string(vec.size()) + ", expected " +
                      std::to_string(dim_));
  }
  auto& index = kind == RecordKind::document ? doc_index_ : seed_index_;
  if (!index.emplace(id, records_.size()).second) {
    throw FormatError(std::string("duplicate ") + (kind == RecordKind::document ? "document" : "seed") + " id \"" +
                      id + "\"");
  }
  records_.push_back({kind, std::move(id), std::move(vec)});
}

const std::vector<float>* EmbeddingTable::document(const std::string& id) const {
  auto it = doc_index_.find(id);
  return it == doc_index_.end() ? nullptr : &records_[it->second].vec;
}

const std::vector<float>* EmbeddingTable::seed(const std::string& term) const {
  auto it = seed_index_.find(term);
  return it == seed_index_.end() ? nullptr : &records_[it->second].vec;
}

namespace {

constexpr char kMagic[8] = {'W', 'S', 'T', 'C', 'E', 'M', 'B', '1'};

class Reader {
 public:
  Reader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(source_ + ": truncated file while reading " + what);
    }
  }
  std::uint64_t uint(std::size_t width, const char* what) {
    unsigned char buf[4];
    bytes(reinterpret_cast<char*>(buf), width, what);
    std::uint64_t v = 0;
    for (std::size_t i = width; i-- > 0;) v = (v << 8) | buf[i];
    return v;
  }
  float f32(const char* what) {
    const auto bits = static_cast<std::uint32_t>(uint(4, what));
    float f;
    std::memcpy(&f, &bits, sizeof f);
    return f;
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
  const std::string& source_;
};

void put_uint(std::ostream& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

EmbeddingTable read_embeddings(std::istream& in, const std::string& source) {
  Reader r(in, source);
  char magic[8];
  r.bytes(magic, 8, "magic");
  if (std::memcmp(magic, kMagic, 8) != 0) throw FormatError(source + ": bad magic (expected WSTCEMB1)");
  const auto count = r.uint(4, "record count");
  const auto dim = r.uint(4, "dimension");
  if (dim == 0) throw FormatError(source + ": dimension 0 in header");
  EmbeddingTable table(static_cast<std::size_t>(dim));
  for (std::uint64_t rec = 0; rec < count; ++rec) {
    const auto len = r.uint(2, "record id length");
    std::string id(static_cast<std::size_t>(len), '\0');
    r.bytes(id.data(), id.size(), "record id");
    unsigned char kind;
    r.bytes(reinterpret_cast<char*>(&kind), 1, "record kind");
    if (kind > 1) throw FormatError(source + ": record \"" + id + "\" has unknown kind " + std::to_string(kind));
    std::vector<float> vec(static_cast<std::size_t>(dim));
    for (auto& v : vec) {
      v = r.f32("vector");
      if (!std::isfinite(v)) throw FormatError(source + ": non-finite value in record \"" + id + "\"");
    }
    table.add(static_cast<RecordKind>(kind), std::move(id), std::move(vec));
  }
  if (!r.at_end()) throw FormatError(source + ": trailing bytes after " + std::to_string(count) + " records");
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embeddings file " + path.string());
  return read_embeddings(in, path.string());
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out.write(kMagic, 8);
  put_uint(out, table.size(), 4);
  put_uint(out, table.dim(), 4);
  for (const auto& rec : table.records()) {
    if (rec.id.size() > 0xffff) throw FormatError("record id longer than 65535 bytes");
    put_uint(out, rec.id.size(), 2);
    out.write(rec.id.data(), static_cast<std::streamsize>(rec.id.size()));
    out.put(static_cast<char>(rec.kind));
    for (float f : rec.vec) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, sizeof bits);
      put_uint(out, bits, 4);
    }
  }
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embeddings file " + path.string());
  write_embeddings(out, table);
}

void validate_coverage(const EmbeddingTable& table, std::span<const std::string> doc_ids,
                       std::span<const std::string> seed_terms) {
  for (const auto& id : doc_ids) {
    if (!table.document(id)) throw DataError("embeddings: missing document id \"" + id + "\"");
  }
  for (const auto& term : seed_terms) {
    if (!table.seed(term)) throw DataError("embeddings: missing seed term \"" + term + "\"");
  }
}

Eigen::VectorXd to_eigen(const std::vector<float>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace wstc
