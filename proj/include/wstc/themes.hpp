#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wstc/corpus.hpp"

namespace wstc {

struct ThemeSpec {
  std::string name;
  std::vector<std::string> seeds;  // raw seed strings, 1-2 words, de-duplicated
};

/// Ordered themes with their seed terms.
class ThemeConfig {
 public:
  ThemeConfig() = default;
  /// Validates names and seeds; duplicate seeds inside a theme are dropped silently.
  explicit ThemeConfig(std::vector<ThemeSpec> themes);

  const std::vector<ThemeSpec>& themes() const { return themes_; }
  std::size_t size() const { return themes_.size(); }
  const ThemeSpec& operator[](std::size_t i) const { return themes_[i]; }
  std::vector<std::string> names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  std::vector<ThemeSpec> themes_;
};

/// Built-in six-theme configuration; "Cancer Pathways & Services" comes first.
const ThemeConfig& default_theme_config();

/// Accepts the TSV layout (`name<TAB>seed1;seed2`, '#' comments) or the JSON layout
/// ({"themes":[{"name":..,"seeds":[..]}]}), detected from the first non-blank byte.
ThemeConfig parse_theme_config(std::string_view text, const std::string& source = "<themes>");
ThemeConfig load_theme_config(const std::filesystem::path& path);

/// Canonical TSV form; parse_theme_config(serialize_theme_config(c)) == c.
std::string serialize_theme_config(const ThemeConfig& config);

struct ResolvedTheme {
  std::vector<TermId> terms;          // unique vocabulary ids, first-seen order
  std::vector<std::string> dropped;   // raw seeds with no vocabulary entry
};

struct ResolvedSeeds {
  bool unigrams_only = false;
  std::vector<ResolvedTheme> themes;
  std::vector<std::string> warnings;

  bool contains(std::size_t theme, TermId term) const;
  /// Per term, whether it is a seed of any theme.
  std::vector<bool> seed_mask(std::size_t vocab_size) const;
};

/// Seed keys (unigram or bigram) of every theme, as used to pin them in the vocabulary.
std::vector<std::string> seed_keys(const ThemeConfig& config, const PreprocessOptions& options);

/// Maps seeds onto vocabulary ids. With `unigrams_only`, multiword seeds contribute
/// their individual tokens. Throws DataError if some theme resolves no seed at all.
ResolvedSeeds resolve_seeds(const ThemeConfig& config, const Vocabulary& vocab,
                            const PreprocessOptions& options, bool unigrams_only);

}  // namespace wstc
