#pragma once

#include <string>
#include <vector>

#include "wstc/model.hpp"

namespace wstc {

struct EngineKeywords {
  std::string engine;
  KeywordTable table;
};

/// Top-n keywords per theme of a fitted model.
EngineKeywords extract_keywords(const EngineModel& model, std::size_t n);

/// Themes as rows, one column per engine; seed terms in bold.
std::string render_keywords_markdown(const std::vector<EngineKeywords>& tables, std::size_t n);

/// engine,theme,rank,term,weight,is_seed
std::string render_keywords_csv(const std::vector<EngineKeywords>& tables);

}  // namespace wstc
