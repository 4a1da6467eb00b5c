#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/labeling.hpp"
#include "wstc/linear.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"
#include "wstc/util.hpp"

namespace wstc {

struct WestclassParams {
  std::size_t dim = 50;
  double gamma = 0.2;          // share of background tokens in a pseudo-document
  std::size_t top_m = 200;
  double temperature = 0.1;
  std::size_t per_class = 500;
  double length_mean = 43.0;
  double conf_threshold = 0.6;
  double delta = 0.001;
  std::size_t max_rounds = 20;
  std::uint64_t rng_seed = 0;
  LogisticParams classifier;
};

struct PseudoDoc {
  std::size_t theme = 0;
  std::vector<TermId> tokens;
};

/// Per theme: the candidate words are its seeds plus their nearest neighbours (by cosine
/// to the mean seed direction), top_m in total. Each token is drawn with probability
/// 1 - gamma from softmax(cos / temperature) over the candidates and with probability gamma
/// from `background`. Lengths are 2 + Geometric with mean length_mean.
/// Throws EngineError for a theme with no unigram seed vector.
std::vector<PseudoDoc> generate_pseudo_docs(const StaticEmbeddings& emb, const ResolvedSeeds& seeds,
                                            std::span<const std::string> theme_names,
                                            std::span<const double> background, const WestclassParams& params,
                                            Rng& rng);

enum class StopReason { converged, max_rounds };
std::string_view stop_reason_name(StopReason r);

struct SelfTrainState {
  OvrLogistic classifier;
  std::size_t rounds = 0;
  std::vector<double> changed_fraction;  // one entry per round
  StopReason stop = StopReason::max_rounds;
};

struct SelfTrainResult {
  SelfTrainState state;
  std::vector<ScoreVector> scores;  // aligned with corpus rows
};

/// Pretrains a one-vs-rest classifier on the pseudo-documents, then alternates: label the
/// corpus with every class whose probability >= conf_threshold, retrain on the documents
/// that received a label, and stop once the fraction of changed label sets drops below
/// delta or max_rounds is reached. Throws EngineError("self-training starved") when no
/// document is confident.
SelfTrainResult pretrain_and_self_train(std::span<const SparseRow> pseudo_rows,
                                        std::span<const std::size_t> pseudo_themes,
                                        std::span<const SparseRow> corpus_rows, std::size_t num_themes,
                                        std::size_t num_features, const WestclassParams& params);

struct WestclassFit {
  StaticEmbeddings embeddings;
  std::vector<PseudoDoc> pseudo;
  SelfTrainState state;
  std::vector<ScoreVector> scores;  // aligned with corpus.docs
  std::unique_ptr<TermWeightModel> model;
};

/// Full pipeline over a prepared corpus; seeds must be resolved with unigrams_only.
WestclassFit fit_westclass(const PreparedCorpus& corpus, const ThemeConfig& themes, const ResolvedSeeds& seeds,
                           const WestclassParams& params);

/// Unigram-only tf-idf view of a token list.
SparseRow unigram_row(std::span<const TermId> unigrams, const Vocabulary& vocab);

}  // namespace wstc
