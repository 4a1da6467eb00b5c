#include "wstc/engine_xclass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wstc/error.hpp"

namespace wstc {

Eigen::MatrixXd document_matrix(const EmbeddingTable& table, std::span<const std::string> doc_ids) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(doc_ids.size()), static_cast<Eigen::Index>(table.dim()));
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    const auto* v = table.document(doc_ids[i]);
    if (!v) throw DataError("embeddings: missing document id \"" + doc_ids[i] + "\"");
    m.row(static_cast<Eigen::Index>(i)) = to_eigen(*v).transpose();
  }
  return normalize_rows(std::move(m));
}

std::vector<std::string> all_seed_strings(const ThemeConfig& themes) {
  std::vector<std::string> out;
  for (const auto& t : themes.themes()) {
    for (const auto& s : t.seeds) {
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  return out;
}

Eigen::MatrixXd class_representations(const EmbeddingTable& table, const ThemeConfig& themes) {
  Eigen::MatrixXd reps = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(themes.size()),
                                               static_cast<Eigen::Index>(table.dim()));
  for (std::size_t t = 0; t < themes.size(); ++t) {
    for (const auto& s : themes[t].seeds) {
      const auto* v = table.seed(s);
      if (!v) throw DataError("embeddings: missing seed term \"" + s + "\"");
      Eigen::VectorXd e = to_eigen(*v);
      const double n = e.norm();
      if (n > 0.0) reps.row(static_cast<Eigen::Index>(t)) += (e / n).transpose();
    }
  }
  return normalize_rows(std::move(reps));
}

XclassFit fit_xclass(const EmbeddingTable& table, std::span<const std::string> doc_ids, const TfIdfMatrix& matrix,
                     const ThemeConfig& themes, const Vocabulary& vocab, const ResolvedSeeds& seeds,
                     const XclassParams& params) {
  if (!(params.select_fraction >= 0.0 && params.select_fraction <= 1.0)) {
    throw UsageError("xclass: select_fraction must lie in [0, 1]");
  }
  if (doc_ids.size() != matrix.num_docs()) throw EngineError("xclass: document ids and tf-idf rows differ");
  if (doc_ids.empty()) throw DataError("xclass: no documents");
  const std::size_t T = themes.size();
  const std::size_t n = doc_ids.size();

  XclassFit fit;
  const Eigen::MatrixXd docs = document_matrix(table, doc_ids);
  fit.class_reps = class_representations(table, themes);
  fit.clusters = spherical_kmeans(docs, fit.class_reps, params.kmeans_iters);

  fit.nearest_rep.resize(n);
  fit.confidence.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    const Eigen::VectorXd sims = fit.class_reps * docs.row(static_cast<Eigen::Index>(d)).transpose();
    std::size_t best = 0;
    for (std::size_t t = 1; t < T; ++t) {
      if (sims(static_cast<Eigen::Index>(t)) > sims(static_cast<Eigen::Index>(best))) best = t;
    }
    double second = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < T; ++t) {
      if (t != best) second = std::max(second, sims(static_cast<Eigen::Index>(t)));
    }
    fit.nearest_rep[d] = best;
    fit.confidence[d] = T > 1 ? sims(static_cast<Eigen::Index>(best)) - second : 1.0;
  }

  fit.pseudo_label.assign(n, kNoLabel);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<std::size_t> cand;
    for (std::size_t d = 0; d < n; ++d) {
      if (fit.nearest_rep[d] == t && fit.clusters.assignment[d] == t) cand.push_back(d);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return fit.confidence[a] > fit.confidence[b]; });
    const auto take = static_cast<std::size_t>(std::ceil(params.select_fraction * static_cast<double>(cand.size())));
    if (take == 0) throw EngineError("xclass: theme \"" + themes[t].name + "\" received no pseudo-labels");
    for (std::size_t i = 0; i < take; ++i) fit.pseudo_label[cand[i]] = t;
  }

  std::vector<SparseRow> rows;
  std::vector<std::vector<std::uint8_t>> labels;
  for (std::size_t d = 0; d < n; ++d) {
    if (fit.pseudo_label[d] == kNoLabel) continue;
    rows.push_back(matrix.rows[d]);
    std::vector<std::uint8_t> y(T, 0);
    y[fit.pseudo_label[d]] = 1;
    labels.push_back(std::move(y));
  }
  fit.classifier = OvrLogistic::train(rows, labels, T, matrix.num_terms, params.classifier);
  for (const auto& row : matrix.rows) fit.scores.push_back(fit.classifier.predict(row));

  nlohmann::ordered_json p;
  p["select_fraction"] = params.select_fraction;
  p["kmeans_iters"] = params.kmeans_iters;
  p["l2"] = params.classifier.l2;
  nlohmann::ordered_json state;
  state["kmeans_iterations"] = fit.clusters.iterations;
  state["kmeans_converged"] = fit.clusters.converged;
  std::vector<std::size_t> per_class(T, 0);
  for (std::size_t l : fit.pseudo_label) {
    if (l != kNoLabel) ++per_class[l];
  }
  state["pseudo_labels_per_theme"] = per_class;
  state["classifier"] = fit.classifier.to_json();
  fit.model = std::make_unique<TermWeightModel>("xclass", themes.names(), vocab.terms(),
                                                seed_flag_matrix(seeds, vocab.size()), fit.classifier.weights(),
                                                std::move(p), std::move(state));
  return fit;
}

}  // namespace wstc
