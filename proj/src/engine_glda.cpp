#include "wstc/engine_glda.hpp"

#include <algorithm>
#include <cmath>

#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

nlohmann::ordered_json GldaModel::state_json() const {
  nlohmann::ordered_json j;
  j["num_topics"] = num_topics;
  j["num_themes"] = num_themes;
  j["phi"] = phi;
  j["theta"] = theta;
  return j;
}

GldaModel fit_glda(std::span<const DocTerms> docs, std::size_t vocab_size, const ResolvedSeeds* seeds,
                   std::size_t num_themes, const GldaParams& params) {
  if (params.iterations == 0) throw UsageError("glda: iterations must be >= 1");
  if (!(params.boost >= 1.0)) throw UsageError("glda: boost must be >= 1");
  if (params.k_extra < 0) throw UsageError("glda: k_extra must be >= 0");
  if (!(params.dirichlet_alpha > 0.0) || !(params.beta > 0.0)) {
    throw UsageError("glda: dirichlet_alpha and beta must be > 0");
  }
  if (!(params.averaging_fraction > 0.0 && params.averaging_fraction <= 1.0)) {
    throw UsageError("glda: averaging_fraction must lie in (0, 1]");
  }
  if (seeds && seeds->themes.size() != num_themes) throw UsageError("glda: seed/theme count mismatch");

  const std::size_t D = docs.size();
  const std::size_t V = vocab_size;
  const std::size_t K = num_themes + static_cast<std::size_t>(params.k_extra);
  if (K == 0) throw UsageError("glda: no topics");

  // Token streams: unigrams followed by bigrams.
  std::vector<std::vector<TermId>> tokens(D);
  std::size_t total = 0;
  for (std::size_t d = 0; d < D; ++d) {
    tokens[d] = docs[d].unigrams;
    tokens[d].insert(tokens[d].end(), docs[d].bigrams.begin(), docs[d].bigrams.end());
    total += tokens[d].size();
  }
  if (D == 0 || total == 0 || V == 0) throw DataError("glda: no in-vocabulary tokens to model");

  // Prior matrix, stored word-major for the sampler.
  std::vector<double> prior(V * K, params.beta);
  if (seeds) {
    for (std::size_t t = 0; t < num_themes; ++t) {
      for (TermId w : seeds->themes[t].terms) prior[w * K + t] = params.beta * params.boost;
    }
  }
  std::vector<double> prior_sum(K, 0.0);
  for (std::size_t w = 0; w < V; ++w) {
    for (std::size_t k = 0; k < K; ++k) prior_sum[k] += prior[w * K + k];
  }

  Rng rng(params.rng_seed);
  std::vector<std::vector<std::uint32_t>> z(D);
  std::vector<double> nwk(V * K, 0.0);
  std::vector<double> ndk(D * K, 0.0);
  std::vector<double> nk(K, 0.0);
  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(tokens[d].size());
    for (std::size_t n = 0; n < tokens[d].size(); ++n) {
      const TermId w = tokens[d][n];
      const auto k = sample_categorical(rng, std::span<const double>(&prior[w * K], K));
      z[d][n] = static_cast<std::uint32_t>(k);
      nwk[w * K + k] += 1.0;
      ndk[d * K + k] += 1.0;
      nk[k] += 1.0;
    }
  }

  const double alpha = params.dirichlet_alpha;
  const auto averaged = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(params.averaging_fraction * static_cast<double>(params.iterations))));
  const std::size_t first_avg = params.iterations - std::min(averaged, params.iterations);

  GldaModel model;
  model.num_topics = K;
  model.num_themes = num_themes;
  model.params = params;
  model.phi.assign(K, std::vector<double>(V, 0.0));
  model.theta.assign(D, std::vector<double>(K, 0.0));

  std::vector<double> weights(K);
  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t n = 0; n < tokens[d].size(); ++n) {
        const TermId w = tokens[d][n];
        std::size_t k = z[d][n];
        nwk[w * K + k] -= 1.0;
        ndk[d * K + k] -= 1.0;
        nk[k] -= 1.0;
        for (std::size_t j = 0; j < K; ++j) {
          weights[j] = (ndk[d * K + j] + alpha) * (nwk[w * K + j] + prior[w * K + j]) / (nk[j] + prior_sum[j]);
        }
        k = sample_categorical(rng, weights);
        z[d][n] = static_cast<std::uint32_t>(k);
        nwk[w * K + k] += 1.0;
        ndk[d * K + k] += 1.0;
        nk[k] += 1.0;
      }
    }
    if (iter >= first_avg) {
      for (std::size_t k = 0; k < K; ++k) {
        const double denom = nk[k] + prior_sum[k];
        for (std::size_t w = 0; w < V; ++w) model.phi[k][w] += (nwk[w * K + k] + prior[w * K + k]) / denom;
      }
      for (std::size_t d = 0; d < D; ++d) {
        const double denom = static_cast<double>(tokens[d].size()) + alpha * static_cast<double>(K);
        for (std::size_t k = 0; k < K; ++k) model.theta[d][k] += (ndk[d * K + k] + alpha) / denom;
      }
    }
  }

  // Average, then renormalize so rounding cannot push a row off the simplex.
  auto normalize = [](std::vector<double>& row) {
    double s = 0.0;
    for (double v : row) s += v;
    for (double& v : row) v /= s;
  };
  for (auto& row : model.phi) normalize(row);
  for (auto& row : model.theta) normalize(row);
  return model;
}

ScoreVector glda_doc_scores(const GldaModel& model, std::size_t doc_index) {
  if (doc_index >= model.theta.size()) {
    throw EngineError("glda: unknown document index " + std::to_string(doc_index));
  }
  const auto& row = model.theta[doc_index];
  return ScoreVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(model.num_themes));
}

std::unique_ptr<TermWeightModel> glda_term_model(const GldaModel& model, const ThemeConfig& themes,
                                                 const Vocabulary& vocab, const ResolvedSeeds& seeds) {
  std::vector<std::vector<double>> weights(model.phi.begin(),
                                           model.phi.begin() + static_cast<std::ptrdiff_t>(model.num_themes));
  nlohmann::ordered_json p;
  p["k_extra"] = model.params.k_extra;
  p["dirichlet_alpha"] = model.params.dirichlet_alpha;
  p["beta"] = model.params.beta;
  p["boost"] = model.params.boost;
  p["iterations"] = model.params.iterations;
  p["averaging_fraction"] = model.params.averaging_fraction;
  return std::make_unique<TermWeightModel>("glda", themes.names(), vocab.terms(),
                                           seed_flag_matrix(seeds, vocab.size()), std::move(weights),
                                           std::move(p), model.state_json());
}

}  // namespace wstc
