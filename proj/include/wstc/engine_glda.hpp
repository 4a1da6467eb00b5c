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

struct GldaParams {
  int k_extra = 2;
  double dirichlet_alpha = 0.1;
  double beta = 0.01;
  double boost = 50.0;
  std::size_t iterations = 500;
  double averaging_fraction = 0.1;
  std::uint64_t rng_seed = 0;
};

struct GldaModel {
  std::size_t num_topics = 0;
  std::size_t num_themes = 0;
  std::vector<std::vector<double>> phi;    // K x V, rows on the simplex
  std::vector<std::vector<double>> theta;  // D x K, rows on the simplex
  GldaParams params;

  nlohmann::ordered_json state_json() const;
};

/// Collapsed Gibbs sampling over unigram and bigram tokens. The prior pseudo-count of
/// word w in topic t is beta * boost when w is a seed of theme t, beta otherwise.
/// Initial assignments are drawn from the same prior, so boost = 1 (or no seeds) is
/// plain LDA. `seeds` may be null for an unguided run with `num_themes` themed slots.
GldaModel fit_glda(std::span<const DocTerms> docs, std::size_t vocab_size, const ResolvedSeeds* seeds,
                   std::size_t num_themes, const GldaParams& params);

/// theta row of a training document restricted to the themed topics.
ScoreVector glda_doc_scores(const GldaModel& model, std::size_t doc_index);

std::unique_ptr<TermWeightModel> glda_term_model(const GldaModel& model, const ThemeConfig& themes,
                                                 const Vocabulary& vocab, const ResolvedSeeds& seeds);

}  // namespace wstc
