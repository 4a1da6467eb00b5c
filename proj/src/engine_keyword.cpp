#include "wstc/engine_keyword.hpp"

#include <algorithm>

namespace wstc {

ScoreVector keyword_scores(const DocTerms& doc, const ResolvedSeeds& seeds) {
  ScoreVector out(seeds.themes.size(), 0.0);
  for (std::size_t t = 0; t < seeds.themes.size(); ++t) {
    const auto& ids = seeds.themes[t].terms;
    auto hit = [&ids](TermId id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
    if (std::any_of(doc.unigrams.begin(), doc.unigrams.end(), hit) ||
        std::any_of(doc.bigrams.begin(), doc.bigrams.end(), hit)) {
      out[t] = 1.0;
    }
  }
  return out;
}

KeywordFit fit_keyword(const PreparedCorpus& corpus, const ThemeConfig& themes,
                       const ResolvedSeeds& seeds) {
  KeywordFit fit;
  const std::size_t K = seeds.themes.size();
  const std::size_t V = corpus.vocab.size();
  std::vector<std::vector<double>> weights(K, std::vector<double>(V, 0.0));
  std::vector<double> matched(K, 0.0);
  for (const auto& doc : corpus.terms) {
    ScoreVector s = keyword_scores(doc, seeds);
    std::vector<TermId> present(doc.unigrams);
    present.insert(present.end(), doc.bigrams.begin(), doc.bigrams.end());
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (std::size_t t = 0; t < K; ++t) {
      if (s[t] == 0.0) continue;
      matched[t] += 1.0;
      for (TermId id : present) weights[t][id] += 1.0;
    }
    fit.scores.push_back(std::move(s));
  }
  for (std::size_t t = 0; t < K; ++t) {
    if (matched[t] == 0.0) continue;
    for (double& w : weights[t]) w /= matched[t];
  }
  nlohmann::ordered_json state;
  state["matched_docs"] = matched;
  fit.model = std::make_unique<TermWeightModel>("keyword", themes.names(), corpus.vocab.terms(),
                                                seed_flag_matrix(seeds, V), std::move(weights),
                                                nlohmann::ordered_json::object(), std::move(state));
  return fit;
}

}  // namespace wstc
