#include "wstc/engine_corex.hpp"

#include <algorithm>
#include <cmath>

#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

namespace {

constexpr double kTiny = 1e-300;

double safe_log(double x) { return std::log(std::max(x, kTiny)); }

// x * log(x / y) with 0 log 0 = 0.
double xlogratio(double x, double y) {
  if (x <= 0.0) return 0.0;
  return x * (safe_log(x) - safe_log(y));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Per-topic conditional word statistics from the current q.
struct TopicStats {
  double s1 = 0.0;                 // sum_d q(y=1|x_d)
  double s0 = 0.0;                 // sum_d q(y=0|x_d)
  std::vector<double> n1, n0;      // per word: same sums restricted to docs containing it
};

}  // namespace

nlohmann::ordered_json CorexModel::state_json() const {
  nlohmann::ordered_json j;
  j["num_topics"] = num_topics;
  j["num_themes"] = num_themes;
  j["tc_history"] = tc_history;
  j["converged"] = converged;
  j["degenerate"] = degenerate;
  j["prior"] = prior;
  j["bias"] = bias;
  j["delta"] = delta;
  return j;
}

std::vector<std::vector<TermId>> binarize(const TfIdfMatrix& matrix) {
  std::vector<std::vector<TermId>> out;
  out.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    std::vector<TermId> ids;
    for (const auto& e : row) {
      if (e.weight > 0.0) ids.push_back(e.term);
    }
    out.push_back(std::move(ids));
  }
  return out;
}

CorexModel fit_corex(const TfIdfMatrix& matrix, const ResolvedSeeds& anchors, const CorexParams& params) {
  if (params.k_extra < 0) throw UsageError("corex: k_extra must be >= 0");
  if (!(params.anchor_strength >= 1.0)) throw UsageError("corex: anchor_strength must be >= 1");
  if (params.max_iter == 0) throw UsageError("corex: max_iter must be >= 1");
  if (!(params.smoothing >= 0.0)) throw UsageError("corex: smoothing must be >= 0");
  if (matrix.num_docs() == 0 || matrix.num_terms == 0) throw DataError("corex: empty document-term matrix");

  const std::size_t D = matrix.num_docs();
  const std::size_t V = matrix.num_terms;
  const std::size_t T = anchors.themes.size();
  const std::size_t K = T + static_cast<std::size_t>(params.k_extra);

  CorexModel model;
  model.num_topics = K;
  model.num_themes = T;
  model.vocab_size = V;
  model.prior.assign(K, 0.5);
  model.bias.assign(K, 0.0);
  model.delta.assign(K, std::vector<double>(V, 0.0));
  model.alpha.assign(K, std::vector<double>(V, 0.0));
  model.mi.assign(K, std::vector<double>(V, 0.0));

  std::vector<bool> anchored(V, false);
  for (std::size_t t = 0; t < T; ++t) {
    for (TermId id : anchors.themes[t].terms) {
      anchored[id] = true;
      model.alpha[t][id] = params.anchor_strength;
    }
  }

  if (D < 2) {
    // Total correlation of a single sample is zero; nothing to learn.
    model.degenerate = true;
    model.tc_history.push_back(0.0);
    return model;
  }

  const auto docs = binarize(matrix);
  std::vector<std::vector<std::uint32_t>> word_docs(V);
  for (std::size_t d = 0; d < D; ++d) {
    for (TermId id : docs[d]) word_docs[id].push_back(static_cast<std::uint32_t>(d));
  }
  const double Dd = static_cast<double>(D);
  std::vector<double> px(V);
  for (std::size_t i = 0; i < V; ++i) px[i] = static_cast<double>(word_docs[i].size()) / Dd;

  // Anchored topics start from their anchors: documents holding one begin in the active
  // half of (0, 1), all others in the inactive half. Free topics start uniformly at random.
  std::vector<std::vector<bool>> has_anchor(T, std::vector<bool>(D, false));
  for (std::size_t t = 0; t < T; ++t) {
    for (TermId id : anchors.themes[t].terms) {
      for (std::uint32_t d : word_docs[id]) has_anchor[t][d] = true;
    }
  }
  Rng rng(params.rng_seed);
  std::vector<double> q(D * K);
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t j = 0; j < K; ++j) {
      const double u = uniform01(rng);
      q[d * K + j] = j < T && !anchors.themes[j].terms.empty() ? 0.5 * (u + (has_anchor[j][d] ? 1.0 : 0.0)) : u;
    }
  }

  const double lam = params.smoothing;
  std::vector<TopicStats> stats(K);
  std::vector<std::vector<double>> a1(K, std::vector<double>(V)), a0(K, std::vector<double>(V));
  std::vector<std::vector<double>> b1(K, std::vector<double>(V)), b0(K, std::vector<double>(V));
  // Per-word log ratios log p(x_i|y) - log p(x_i) for a present (lp) and an absent (lm) word.
  std::vector<std::vector<double>> lp1(K, std::vector<double>(V)), lp0(K, std::vector<double>(V));
  std::vector<std::vector<double>> lm1(K, std::vector<double>(V)), lm0(K, std::vector<double>(V));
  std::vector<double> log_p1(K), log_p0(K);

  // Smoothed conditional: lam virtual documents per state, each present with the marginal rate.
  const auto conditional = [&](double n, double s, double p) {
    return s + lam <= 1e-12 * Dd ? p : (n + lam * p) / (s + lam);
  };

  for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
    // r-step: exact MAP conditionals under q (plain maximum likelihood when lam = 0).
    for (std::size_t j = 0; j < K; ++j) {
      auto& s = stats[j];
      s.s1 = 0.0;
      s.s0 = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        s.s1 += q[d * K + j];
        s.s0 += 1.0 - q[d * K + j];
      }
      s.n1.assign(V, 0.0);
      s.n0.assign(V, 0.0);
      for (std::size_t i = 0; i < V; ++i) {
        for (std::uint32_t d : word_docs[i]) {
          s.n1[i] += q[d * K + j];
          s.n0[i] += 1.0 - q[d * K + j];
        }
        const double p = px[i];
        const double t1 = conditional(s.n1[i], s.s1, p);
        const double t0 = conditional(s.n0[i], s.s0, p);
        lp1[j][i] = safe_log(t1) - safe_log(p);
        lp0[j][i] = safe_log(t0) - safe_log(p);
        lm1[j][i] = p < 1.0 ? safe_log(1.0 - t1) - safe_log(1.0 - p) : 0.0;
        lm0[j][i] = p < 1.0 ? safe_log(1.0 - t0) - safe_log(1.0 - p) : 0.0;
      }
      log_p1[j] = safe_log(s.s1 / Dd);
      log_p0[j] = safe_log(s.s0 / Dd);
    }

    // alpha-step: each word's contribution to the bound is its (smoothed) mutual information
    // with the topic; free words join the topic where it is largest, anchors stay clamped.
    for (std::size_t j = 0; j < K; ++j) {
      const auto& s = stats[j];
      for (std::size_t i = 0; i < V; ++i) {
        const double p = px[i];
        const double w1 = s.n1[i] + lam * p;
        const double w0 = s.n0[i] + lam * p;
        const double v1 = std::max(s.s1 - s.n1[i], 0.0) + lam * (1.0 - p);
        const double v0 = std::max(s.s0 - s.n0[i], 0.0) + lam * (1.0 - p);
        double c = 0.0;
        if (w1 > 0.0) c += w1 * lp1[j][i];
        if (w0 > 0.0) c += w0 * lp0[j][i];
        if (v1 > 0.0) c += v1 * lm1[j][i];
        if (v0 > 0.0) c += v0 * lm0[j][i];
        model.mi[j][i] = c / Dd;
      }
    }
    for (std::size_t i = 0; i < V; ++i) {
      if (anchored[i]) continue;
      std::size_t best = 0;
      for (std::size_t j = 1; j < K; ++j) {
        if (model.mi[j][i] > model.mi[best][i]) best = j;
      }
      for (std::size_t j = 0; j < K; ++j) model.alpha[j][i] = j == best ? 1.0 : 0.0;
    }

    // q-step: q(y|x) proportional to p(y) prod_i (p(x_i|y)/p(x_i))^alpha. The bound adds the
    // prior's -lam * KL(p_i || p(x_i|y)) per weighted word so that every step is an ascent step.
    double tc = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
      const auto& alpha = model.alpha[j];
      double base1 = log_p1[j];
      double base0 = log_p0[j];
      double prior_term = 0.0;
      for (std::size_t i = 0; i < V; ++i) {
        a1[j][i] = a0[j][i] = b1[j][i] = b0[j][i] = 0.0;
        if (alpha[i] == 0.0) continue;
        a1[j][i] = alpha[i] * lm1[j][i];
        a0[j][i] = alpha[i] * lm0[j][i];
        b1[j][i] = alpha[i] * lp1[j][i] - a1[j][i];
        b0[j][i] = alpha[i] * lp0[j][i] - a0[j][i];
        base1 += a1[j][i];
        base0 += a0[j][i];
        if (lam > 0.0) {
          const double p = px[i];
          prior_term += alpha[i] * (p * (lp1[j][i] + lp0[j][i]) + (1.0 - p) * (lm1[j][i] + lm0[j][i]));
        }
      }
      double sum_log_z = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        double v1 = base1;
        double v0 = base0;
        for (TermId id : docs[d]) {
          v1 += b1[j][id];
          v0 += b0[j][id];
        }
        const double log_z = log_sum_exp(v1, v0);
        q[d * K + j] = std::exp(v1 - log_z);
        sum_log_z += log_z;
      }
      tc += (sum_log_z + lam * prior_term) / Dd;
      model.prior[j] = std::exp(log_p1[j]);
      model.bias[j] = base1 - base0;
      for (std::size_t i = 0; i < V; ++i) model.delta[j][i] = b1[j][i] - b0[j][i];
    }
    for (auto& row : model.mi) {
      for (double& v : row) v = std::max(v, 0.0);
    }
    model.tc_history.push_back(tc);
    const std::size_t h = model.tc_history.size();
    if (h >= 2 && std::abs(model.tc_history[h - 1] - model.tc_history[h - 2]) < params.tol) {
      model.converged = true;
      break;
    }
  }

  // Orientation: the active state is the one under which an all-absent document is
  // less likely, so missing evidence can only pull a score below its prior.
  for (std::size_t j = 0; j < K; ++j) {
    double absent1 = 0.0;
    double absent0 = 0.0;
    for (std::size_t i = 0; i < V; ++i) {
      absent1 += a1[j][i];
      absent0 += a0[j][i];
    }
    if (absent1 > absent0) {
      model.prior[j] = 1.0 - model.prior[j];
      model.bias[j] = -model.bias[j];
      for (double& v : model.delta[j]) v = -v;
    }
  }
  return model;
}

ScoreVector corex_doc_scores(const CorexModel& model, std::span<const TermId> present_terms) {
  ScoreVector out(model.num_themes, 0.0);
  if (model.degenerate) return out;
  for (std::size_t t = 0; t < model.num_themes; ++t) {
    double z = model.bias[t];
    for (TermId id : present_terms) z += model.delta[t][id];
    out[t] = sigmoid(z);
  }
  return out;
}

std::unique_ptr<TermWeightModel> corex_term_model(const CorexModel& model, const ThemeConfig& themes,
                                                  const Vocabulary& vocab, const ResolvedSeeds& seeds,
                                                  const CorexParams& params) {
  std::vector<std::vector<double>> weights(model.num_themes, std::vector<double>(model.vocab_size, 0.0));
  for (std::size_t t = 0; t < model.num_themes; ++t) {
    for (std::size_t i = 0; i < model.vocab_size; ++i) weights[t][i] = model.alpha[t][i] * model.mi[t][i];
  }
  nlohmann::ordered_json p;
  p["k_extra"] = params.k_extra;
  p["anchor_strength"] = params.anchor_strength;
  p["max_iter"] = params.max_iter;
  p["tol"] = params.tol;
  p["smoothing"] = params.smoothing;
  return std::make_unique<TermWeightModel>("corex", themes.names(), vocab.terms(),
                                           seed_flag_matrix(seeds, vocab.size()), std::move(weights),
                                           std::move(p), model.state_json());
}

}  // namespace wstc
