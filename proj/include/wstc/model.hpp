#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "wstc/corpus.hpp"
#include "wstc/themes.hpp"

namespace wstc {

struct RankedTerm {
  std::string term;
  double weight = 0.0;
  bool is_seed = false;
};

struct ThemeKeywords {
  std::string theme;
  std::vector<RankedTerm> terms;
  std::string warning;  // set when the theme has nothing to rank
};

using KeywordTable = std::vector<ThemeKeywords>;

/// Fitted state of one engine as seen by the CLI: per-theme term weights for keyword
/// extraction plus an engine-specific JSON payload (parameters and fitted arrays).
class EngineModel {
 public:
  virtual ~EngineModel() = default;
  virtual const std::string& engine() const = 0;
  /// Top-n terms per theme by weight, ties broken by term index; n > V yields all terms.
  virtual KeywordTable topic_words(std::size_t n) const = 0;
  virtual nlohmann::ordered_json to_json() const = 0;
};

/// Generic implementation shared by all engines.
class TermWeightModel final : public EngineModel {
 public:
  TermWeightModel(std::string engine, std::vector<std::string> themes, std::vector<std::string> terms,
                  std::vector<std::vector<bool>> seed_flags, std::vector<std::vector<double>> weights,
                  nlohmann::ordered_json params, nlohmann::ordered_json state);

  const std::string& engine() const override { return engine_; }
  KeywordTable topic_words(std::size_t n) const override;
  nlohmann::ordered_json to_json() const override;

  const std::vector<std::string>& themes() const { return themes_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const nlohmann::ordered_json& params() const { return params_; }
  const nlohmann::ordered_json& state() const { return state_; }

 private:
  std::string engine_;
  std::vector<std::string> themes_;
  std::vector<std::string> terms_;
  std::vector<std::vector<bool>> seed_flags_;  // theme x term
  std::vector<std::vector<double>> weights_;   // theme x term; <= 0 means "not ranked"
  nlohmann::ordered_json params_;
  nlohmann::ordered_json state_;
};

inline constexpr int kModelFormatVersion = 1;

/// Builds the theme x term seed-flag matrix for a model.
std::vector<std::vector<bool>> seed_flag_matrix(const ResolvedSeeds& seeds, std::size_t vocab_size);

/// Inverse of EngineModel::to_json. Throws FormatError on malformed input.
std::unique_ptr<EngineModel> model_from_json(const nlohmann::ordered_json& j);
std::unique_ptr<EngineModel> load_model(const std::filesystem::path& path);

}  // namespace wstc
