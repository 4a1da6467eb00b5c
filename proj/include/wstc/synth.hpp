#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/themes.hpp"

namespace wstc {

struct SynthConfig {
  std::size_t n_docs = 2000;
  std::vector<double> theme_marginals{0.43, 0.27, 0.23, 0.16, 0.11, 0.09};
  double no_theme_prob = 0.14;
  double length_mean = 43.0;
  double overlap_noise = 0.1;      // share of tokens drawn from the shared background
  std::size_t filler_words = 40;   // invented words planted per theme
  std::size_t background_words = 300;
  bool single_theme = false;       // exactly one theme per non-empty document
  std::uint64_t rng_seed = 0;
};

struct SynthCorpus {
  std::vector<RawComment> comments;                 // gold = generating theme set
  std::vector<std::string> themes;
  std::vector<std::vector<std::string>> planted;    // per theme: seed items then fillers
  std::vector<std::string> background;
  std::map<std::string, std::vector<std::string>> word_themes;  // every planted word
};

/// Planted vocabularies are disjoint: a theme keeps those of its seeds whose tokens no other
/// theme's seeds share, plus `filler_words` invented words that pass the preprocessing
/// pipeline unchanged. Each document has themes drawn independently by marginal (empty
/// with probability no_theme_prob, otherwise empty draws are rejected) and
/// 2 + Poisson(length_mean - 2) words; a word comes from the background with probability
/// overlap_noise, otherwise from a uniformly chosen theme of the document.
SynthCorpus generate_corpus(const ThemeConfig& themes, const SynthConfig& config);

/// {"themes":[..], "planted":{theme:[..]}, "background":[..], "word_themes":{word:[..]}}
std::string truth_json(const SynthCorpus& corpus);

/// Vectors whose geometry reflects the planted themes: a planted word is its theme's random
/// unit direction plus hashed Gaussian noise of norm ~noise, other words are noise only.
/// Documents and seed terms get the normalized mean of their words' vectors.
EmbeddingTable synthetic_embeddings(std::span<const RawComment> comments, const SynthCorpus& truth,
                                    const ThemeConfig& themes, std::size_t dim = 32, double noise = 1.0,
                                    std::uint64_t seed = 0);

}  // namespace wstc
