#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/labeling.hpp"
#include "wstc/model.hpp"
#include "wstc/themes.hpp"

namespace wstc {

enum class EngineKind { keyword, corex, glda, westclass, xclass, bertopic };

EngineKind parse_engine(const std::string& name);
std::string engine_name(EngineKind kind);
/// Score-to-label rule each engine uses unless overridden.
PolicyKind default_policy(EngineKind kind);
bool needs_embeddings(EngineKind kind);

/// Parses "key=value" strings; throws UsageError on malformed entries or duplicates.
std::map<std::string, std::string> parse_params(const std::vector<std::string>& items);

struct LabelRequest {
  EngineKind engine = EngineKind::keyword;
  std::vector<RawComment> comments;
  ThemeConfig themes;
  const EmbeddingTable* embeddings = nullptr;  // required by xclass and bertopic
  std::uint64_t rng_seed = 0;
  std::optional<double> threshold;             // probability threshold or simplex floor
  std::map<std::string, std::string> params;   // engine-specific overrides
  std::size_t min_df = 2;
  bool spell_correct = false;
  std::unordered_set<std::string> lexicon;     // extra known words for spelling correction
};

struct LabelResult {
  PredictionSet predictions;  // every comment, file order
  std::unique_ptr<EngineModel> model;
  std::vector<std::string> warnings;
};

/// Preprocesses the corpus, resolves seeds, fits the engine transductively and decides
/// labels. Throws UsageError for bad parameters, DataError for bad inputs and EngineError
/// when fitting fails.
LabelResult run_label(const LabelRequest& request);

/// Stable digest over every record of a corpus, gold labels included.
std::string corpus_hash(std::span<const RawComment> comments);

}  // namespace wstc
