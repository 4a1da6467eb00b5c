#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/kmeans.hpp"
#include "wstc/labeling.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"

namespace wstc {

struct BertopicParams {
  int k_extra = 2;
  std::size_t kmeans_iters = 50;
  std::uint64_t rng_seed = 0;
};

struct BertopicFit {
  KMeansResult clusters;            // centroid t < |themes| belongs to theme t
  std::vector<ScoreVector> scores;  // at most one nonzero entry each
  std::unique_ptr<TermWeightModel> model;
};

/// Spherical k-means with |themes| + k_extra centroids: themed centroids start at the class
/// reps, the extras at k-means++ picks. A document scores 1.0 for the theme of its cluster.
BertopicFit guided_cluster(const EmbeddingTable& table, std::span<const std::string> doc_ids,
                           const ThemeConfig& themes, const BertopicParams& params);

/// Class-based tf-idf: score(k, w) = tf of w in cluster k's documents * ln(1 + K / cf(w)),
/// with cf(w) the number of clusters containing w. Rows for all K clusters.
std::vector<std::vector<double>> ctfidf_weights(std::span<const std::size_t> assignment, std::size_t num_clusters,
                                                std::span<const DocTerms> docs, std::size_t vocab_size);

/// Attaches the themed clusters' c-TF-IDF rows as the keyword model.
void attach_bertopic_model(BertopicFit& fit, const ThemeConfig& themes, std::span<const DocTerms> docs,
                           const Vocabulary& vocab, const ResolvedSeeds& seeds, const BertopicParams& params);

}  // namespace wstc
