#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/labeling.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"

namespace wstc {

/// 1.0 for each theme with at least one resolved seed id in the document, else 0.0.
ScoreVector keyword_scores(const DocTerms& doc, const ResolvedSeeds& seeds);

struct KeywordFit {
  std::vector<ScoreVector> scores;  // aligned with corpus.docs
  std::unique_ptr<TermWeightModel> model;
};

/// Scores every kept document. The keyword ranking of a theme is the share of its
/// matched documents that contain each term.
KeywordFit fit_keyword(const PreparedCorpus& corpus, const ThemeConfig& themes,
                       const ResolvedSeeds& seeds);

}  // namespace wstc
