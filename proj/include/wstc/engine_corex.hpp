#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/labeling.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"

namespace wstc {

struct CorexParams {
  int k_extra = 2;
  double anchor_strength = 4.0;
  std::size_t max_iter = 200;
  double tol = 1e-6;
  /// Virtual documents per topic state pulling p(word|state) toward the word's marginal.
  double smoothing = 1.0;
  std::uint64_t rng_seed = 0;
};

/// Anchored CorEx over binary word presence with binary latent topics. The first
/// `num_themes` topics are anchored to the themes' seeds; the rest are background.
struct CorexModel {
  std::size_t num_topics = 0;
  std::size_t num_themes = 0;
  std::size_t vocab_size = 0;
  std::vector<double> prior;                // p(topic active)
  std::vector<double> bias;                 // logit of an all-absent document
  std::vector<std::vector<double>> delta;   // K x V logit increment of a present word
  std::vector<std::vector<double>> alpha;   // K x V word-to-topic weights
  std::vector<std::vector<double>> mi;      // K x V mutual information under the fitted joint
  std::vector<double> tc_history;           // total correlation after every update of q
  bool converged = false;
  bool degenerate = false;                  // fewer than two documents

  nlohmann::ordered_json state_json() const;
};

/// Present-term ids of each row (weight > 0), i.e. the internal binarization.
std::vector<std::vector<TermId>> binarize(const TfIdfMatrix& matrix);

CorexModel fit_corex(const TfIdfMatrix& matrix, const ResolvedSeeds& anchors, const CorexParams& params);

/// Posterior activation p(topic active | x) of each themed topic.
ScoreVector corex_doc_scores(const CorexModel& model, std::span<const TermId> present_terms);

/// Keyword weight = alpha * mutual information, restricted to the themed topics.
std::unique_ptr<TermWeightModel> corex_term_model(const CorexModel& model, const ThemeConfig& themes,
                                                  const Vocabulary& vocab, const ResolvedSeeds& seeds,
                                                  const CorexParams& params);

}  // namespace wstc
