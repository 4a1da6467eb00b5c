#include "wstc/engine_westclass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wstc/error.hpp"

namespace wstc {

std::string_view stop_reason_name(StopReason r) {
  return r == StopReason::converged ? "converged" : "max_rounds";
}

SparseRow unigram_row(std::span<const TermId> unigrams, const Vocabulary& vocab) {
  return tfidf_row(unigrams, vocab);
}

namespace {

std::size_t pseudo_length(double length_mean, Rng& rng) {
  if (length_mean <= 2.0) return 2;
  const double p = 1.0 / (length_mean - 1.0);
  double u = uniform01(rng);
  while (u <= 0.0) u = uniform01(rng);
  return 2 + static_cast<std::size_t>(std::floor(std::log(u) / std::log1p(-p)));
}

std::vector<std::vector<std::size_t>> threshold_labels(const std::vector<ScoreVector>& scores, double tau) {
  std::vector<std::vector<std::size_t>> out(scores.size());
  for (std::size_t d = 0; d < scores.size(); ++d) {
    for (std::size_t t = 0; t < scores[d].size(); ++t) {
      if (scores[d][t] >= tau) out[d].push_back(t);
    }
  }
  return out;
}

std::vector<ScoreVector> predict_all(const OvrLogistic& clf, std::span<const SparseRow> rows) {
  std::vector<ScoreVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(clf.predict(r));
  return out;
}

}  // namespace

std::vector<PseudoDoc> generate_pseudo_docs(const StaticEmbeddings& emb, const ResolvedSeeds& seeds,
                                            std::span<const std::string> theme_names,
                                            std::span<const double> background, const WestclassParams& params,
                                            Rng& rng) {
  if (!(params.temperature > 0.0)) throw UsageError("westclass: temperature must be > 0");
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0)) throw UsageError("westclass: gamma must lie in [0, 1]");
  if (params.top_m == 0) throw UsageError("westclass: top_m must be >= 1");
  const std::size_t V = static_cast<std::size_t>(emb.vectors.rows());

  std::vector<Eigen::VectorXd> unit(V);
  for (std::size_t i = 0; i < V; ++i) {
    if (emb.has_vector[i]) unit[i] = emb.vectors.row(static_cast<Eigen::Index>(i)).transpose().normalized();
  }

  std::vector<PseudoDoc> out;
  for (std::size_t t = 0; t < seeds.themes.size(); ++t) {
    std::vector<TermId> seed_ids;
    for (TermId id : seeds.themes[t].terms) {
      if (id < V && emb.has_vector[id]) seed_ids.push_back(id);
    }
    if (seed_ids.empty()) {
      throw EngineError("westclass: theme \"" + theme_names[t] + "\" has no unigram seed with an embedding");
    }
    Eigen::VectorXd center = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(emb.dim));
    for (TermId id : seed_ids) center += unit[id];
    center.normalize();

    auto cos = [&](TermId id) { return unit[id].dot(center); };
    auto by_cos = [&](TermId a, TermId b) {
      const double ca = cos(a);
      const double cb = cos(b);
      return ca != cb ? ca > cb : a < b;
    };
    std::sort(seed_ids.begin(), seed_ids.end(), by_cos);
    std::vector<TermId> candidates(seed_ids.begin(),
                                   seed_ids.begin() + static_cast<std::ptrdiff_t>(std::min(params.top_m, seed_ids.size())));
    if (candidates.size() < params.top_m) {
      std::vector<TermId> others;
      for (TermId id = 0; id < V; ++id) {
        if (emb.has_vector[id] && std::find(seed_ids.begin(), seed_ids.end(), id) == seed_ids.end()) {
          others.push_back(id);
        }
      }
      const std::size_t take = std::min(params.top_m - candidates.size(), others.size());
      std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(take), others.end(), by_cos);
      candidates.insert(candidates.end(), others.begin(), others.begin() + static_cast<std::ptrdiff_t>(take));
    }
    double max_cos = -1.0;
    for (TermId id : candidates) max_cos = std::max(max_cos, cos(id));
    std::vector<double> weights;
    for (TermId id : candidates) weights.push_back(std::exp((cos(id) - max_cos) / params.temperature));

    for (std::size_t n = 0; n < params.per_class; ++n) {
      PseudoDoc doc;
      doc.theme = t;
      const std::size_t len = pseudo_length(params.length_mean, rng);
      for (std::size_t k = 0; k < len; ++k) {
        if (uniform01(rng) < params.gamma) {
          doc.tokens.push_back(static_cast<TermId>(sample_categorical(rng, background)));
        } else {
          doc.tokens.push_back(candidates[sample_categorical(rng, weights)]);
        }
      }
      out.push_back(std::move(doc));
    }
  }
  return out;
}

SelfTrainResult pretrain_and_self_train(std::span<const SparseRow> pseudo_rows,
                                        std::span<const std::size_t> pseudo_themes,
                                        std::span<const SparseRow> corpus_rows, std::size_t num_themes,
                                        std::size_t num_features, const WestclassParams& params) {
  std::vector<bool> covered(num_themes, false);
  for (std::size_t t : pseudo_themes) covered[t] = true;
  if (pseudo_rows.empty() || std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw EngineError("westclass: every theme needs pseudo-documents");
  }
  std::vector<std::vector<std::uint8_t>> pseudo_labels(pseudo_rows.size(), std::vector<std::uint8_t>(num_themes, 0));
  for (std::size_t i = 0; i < pseudo_themes.size(); ++i) pseudo_labels[i][pseudo_themes[i]] = 1;

  SelfTrainResult res;
  res.state.classifier = OvrLogistic::train(pseudo_rows, pseudo_labels, num_themes, num_features, params.classifier);
  res.scores = predict_all(res.state.classifier, corpus_rows);
  auto labels = threshold_labels(res.scores, params.conf_threshold);
  res.state.stop = StopReason::max_rounds;

  for (std::size_t round = 1; round <= params.max_rounds; ++round) {
    std::vector<SparseRow> train_rows;
    std::vector<std::vector<std::uint8_t>> train_labels;
    for (std::size_t d = 0; d < labels.size(); ++d) {
      if (labels[d].empty()) continue;
      train_rows.push_back(corpus_rows[d]);
      std::vector<std::uint8_t> y(num_themes, 0);
      for (std::size_t t : labels[d]) y[t] = 1;
      train_labels.push_back(std::move(y));
    }
    if (train_rows.empty()) throw EngineError("self-training starved");

    res.state.classifier = OvrLogistic::train(train_rows, train_labels, num_themes, num_features, params.classifier);
    res.scores = predict_all(res.state.classifier, corpus_rows);
    auto next = threshold_labels(res.scores, params.conf_threshold);
    std::size_t changed = 0;
    for (std::size_t d = 0; d < next.size(); ++d) changed += next[d] != labels[d] ? 1 : 0;
    const double frac = next.empty() ? 0.0 : static_cast<double>(changed) / static_cast<double>(next.size());
    res.state.changed_fraction.push_back(frac);
    res.state.rounds = round;
    labels = std::move(next);
    if (frac < params.delta) {
      res.state.stop = StopReason::converged;
      break;
    }
  }
  return res;
}

WestclassFit fit_westclass(const PreparedCorpus& corpus, const ThemeConfig& themes, const ResolvedSeeds& seeds,
                           const WestclassParams& params) {
  if (!seeds.unigrams_only) throw UsageError("westclass: seeds must be resolved as unigrams");
  WestclassFit fit;
  fit.embeddings = train_static_embeddings(corpus.terms, corpus.vocab, params.dim);

  const std::size_t V = corpus.vocab.size();
  std::vector<double> background(V, 0.0);
  for (const auto& d : corpus.terms) {
    for (TermId id : d.unigrams) background[id] += 1.0;
  }
  Rng rng(params.rng_seed);
  const auto names = themes.names();
  fit.pseudo = generate_pseudo_docs(fit.embeddings, seeds, names, background, params, rng);

  std::vector<SparseRow> pseudo_rows;
  std::vector<std::size_t> pseudo_themes;
  for (const auto& p : fit.pseudo) {
    pseudo_rows.push_back(unigram_row(p.tokens, corpus.vocab));
    pseudo_themes.push_back(p.theme);
  }
  std::vector<SparseRow> corpus_rows;
  for (const auto& d : corpus.terms) corpus_rows.push_back(unigram_row(d.unigrams, corpus.vocab));

  auto res = pretrain_and_self_train(pseudo_rows, pseudo_themes, corpus_rows, themes.size(), V, params);
  fit.state = std::move(res.state);
  fit.scores = std::move(res.scores);

  std::vector<std::vector<double>> weights = fit.state.classifier.weights();
  nlohmann::ordered_json p;
  p["dim"] = params.dim;
  p["gamma"] = params.gamma;
  p["top_m"] = params.top_m;
  p["temperature"] = params.temperature;
  p["per_class"] = params.per_class;
  p["length_mean"] = params.length_mean;
  p["conf_threshold"] = params.conf_threshold;
  p["delta"] = params.delta;
  p["max_rounds"] = params.max_rounds;
  p["l2"] = params.classifier.l2;
  nlohmann::ordered_json state;
  state["rounds"] = fit.state.rounds;
  state["stop_reason"] = stop_reason_name(fit.state.stop);
  state["changed_fraction"] = fit.state.changed_fraction;
  state["classifier"] = fit.state.classifier.to_json();
  fit.model = std::make_unique<TermWeightModel>("westclass", names, corpus.vocab.terms(),
                                                seed_flag_matrix(seeds, V), std::move(weights), std::move(p),
                                                std::move(state));
  return fit;
}

}  // namespace wstc
