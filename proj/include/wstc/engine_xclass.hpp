#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/kmeans.hpp"
#include "wstc/labeling.hpp"
#include "wstc/linear.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"

namespace wstc {

/// Unit-normalized document vectors, one row per id.
Eigen::MatrixXd document_matrix(const EmbeddingTable& table, std::span<const std::string> doc_ids);

/// Row t = normalized mean of the unit vectors of theme t's configured seed strings.
Eigen::MatrixXd class_representations(const EmbeddingTable& table, const ThemeConfig& themes);

/// Every configured seed string of every theme.
std::vector<std::string> all_seed_strings(const ThemeConfig& themes);

struct XclassParams {
  double select_fraction = 0.5;
  std::size_t kmeans_iters = 50;
  std::uint64_t rng_seed = 0;
  LogisticParams classifier;
};

inline constexpr std::size_t kNoLabel = std::numeric_limits<std::size_t>::max();

struct XclassFit {
  Eigen::MatrixXd class_reps;
  KMeansResult clusters;
  std::vector<std::size_t> nearest_rep;   // per document
  std::vector<double> confidence;         // cosine margin best vs second-best rep
  std::vector<std::size_t> pseudo_label;  // kNoLabel when not selected
  OvrLogistic classifier;
  std::vector<ScoreVector> scores;
  std::unique_ptr<TermWeightModel> model;
};

/// Pseudo-labels: per class, the top ceil(select_fraction * n) documents by confidence among
/// the n documents whose nearest class rep and k-means cluster are both that class. A
/// one-vs-rest classifier over the tf-idf rows is then trained on them and scores all rows.
/// Throws EngineError naming a theme that receives no pseudo-label.
XclassFit fit_xclass(const EmbeddingTable& table, std::span<const std::string> doc_ids, const TfIdfMatrix& matrix,
                     const ThemeConfig& themes, const Vocabulary& vocab, const ResolvedSeeds& seeds,
                     const XclassParams& params);

}  // namespace wstc
