#include "wstc/engine_bertopic.hpp"

#include <cmath>

#include "wstc/engine_xclass.hpp"
#include "wstc/error.hpp"

namespace wstc {

BertopicFit guided_cluster(const EmbeddingTable& table, std::span<const std::string> doc_ids,
                           const ThemeConfig& themes, const BertopicParams& params) {
  if (params.k_extra < 0) throw UsageError("bertopic: k_extra must be >= 0");
  if (table.size() == 0 || doc_ids.empty()) throw DataError("bertopic: empty embedding table");
  const Eigen::MatrixXd docs = document_matrix(table, doc_ids);
  const Eigen::MatrixXd reps = class_representations(table, themes);
  Rng rng(params.rng_seed);
  const Eigen::MatrixXd extra = kmeanspp_extend(docs, reps, static_cast<std::size_t>(params.k_extra), rng);
  Eigen::MatrixXd init(reps.rows() + extra.rows(), reps.cols());
  init << reps, extra;

  BertopicFit fit;
  fit.clusters = spherical_kmeans(docs, init, params.kmeans_iters);
  for (std::size_t k : fit.clusters.assignment) {
    ScoreVector s(themes.size(), 0.0);
    if (k < themes.size()) s[k] = 1.0;
    fit.scores.push_back(std::move(s));
  }
  return fit;
}

std::vector<std::vector<double>> ctfidf_weights(std::span<const std::size_t> assignment, std::size_t num_clusters,
                                                std::span<const DocTerms> docs, std::size_t vocab_size) {
  std::vector<std::vector<double>> tf(num_clusters, std::vector<double>(vocab_size, 0.0));
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto& row = tf[assignment[d]];
    for (TermId id : docs[d].unigrams) row[id] += 1.0;
    for (TermId id : docs[d].bigrams) row[id] += 1.0;
  }
  std::vector<double> cf(vocab_size, 0.0);
  for (const auto& row : tf) {
    for (std::size_t w = 0; w < vocab_size; ++w) cf[w] += row[w] > 0.0 ? 1.0 : 0.0;
  }
  const double K = static_cast<double>(num_clusters);
  for (auto& row : tf) {
    for (std::size_t w = 0; w < vocab_size; ++w) {
      if (row[w] > 0.0) row[w] *= std::log(1.0 + K / cf[w]);
    }
  }
  return tf;
}

void attach_bertopic_model(BertopicFit& fit, const ThemeConfig& themes, std::span<const DocTerms> docs,
                           const Vocabulary& vocab, const ResolvedSeeds& seeds, const BertopicParams& params) {
  const auto K = static_cast<std::size_t>(fit.clusters.centroids.rows());
  auto weights = ctfidf_weights(fit.clusters.assignment, K, docs, vocab.size());
  weights.resize(themes.size());
  nlohmann::ordered_json p;
  p["k_extra"] = params.k_extra;
  p["kmeans_iters"] = params.kmeans_iters;
  nlohmann::ordered_json state;
  std::vector<std::size_t> sizes(K, 0);
  for (std::size_t k : fit.clusters.assignment) ++sizes[k];
  state["cluster_sizes"] = sizes;
  state["kmeans_iterations"] = fit.clusters.iterations;
  state["kmeans_converged"] = fit.clusters.converged;
  fit.model = std::make_unique<TermWeightModel>("bertopic", themes.names(), vocab.terms(),
                                                seed_flag_matrix(seeds, vocab.size()), std::move(weights),
                                                std::move(p), std::move(state));
}

}  // namespace wstc
