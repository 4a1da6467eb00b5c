#include "wstc/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "json.hpp"
#include "wstc/error.hpp"
#include "wstc/text.hpp"
#include "wstc/util.hpp"

namespace wstc {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";

// Consonant-vowel-consonant-vowel-consonant pseudo-word that survives preprocessing as is.
std::string invent_word(Rng& rng, const PreprocessOptions& options, std::set<std::string>& taken) {
  for (;;) {
    std::string w;
    for (int i = 0; i < 5; ++i) {
      const auto& pool = i % 2 == 0 ? kConsonants : kVowels;
      w += pool[uniform_index(rng, pool.size())];
    }
    if (taken.count(w) || options.stopwords.count(w) || light_stem(w) != w) continue;
    taken.insert(w);
    return w;
  }
}

std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<double> hashed_gaussian(std::string_view key, std::uint64_t seed, std::size_t dim, double scale) {
  Rng rng(std::stoull(fnv1a_hex(key), nullptr, 16) ^ (seed * 0x9e3779b97f4a7c15ULL));
  std::vector<double> v(dim);
  for (double& x : v) x = scale * standard_normal(rng);
  return v;
}

}  // namespace

SynthCorpus generate_corpus(const ThemeConfig& themes, const SynthConfig& config) {
  const std::size_t T = themes.size();
  if (config.theme_marginals.size() != T) {
    throw DataError("synth: " + std::to_string(config.theme_marginals.size()) + " marginals for " +
                    std::to_string(T) + " themes");
  }
  double msum = 0.0;
  for (double m : config.theme_marginals) {
    if (!(m >= 0.0 && m <= 1.0)) throw DataError("synth: theme marginals must lie in [0, 1]");
    msum += m;
  }
  if (!(config.no_theme_prob >= 0.0 && config.no_theme_prob <= 1.0)) {
    throw DataError("synth: no_theme_prob must lie in [0, 1]");
  }
  if (msum == 0.0 && config.no_theme_prob < 1.0) {
    throw DataError("synth: all theme marginals are zero but no_theme_prob < 1");
  }
  if (!(config.length_mean >= 2.0)) throw DataError("synth: length_mean must be >= 2");
  if (!(config.overlap_noise >= 0.0 && config.overlap_noise <= 1.0)) {
    throw DataError("synth: overlap_noise must lie in [0, 1]");
  }
  if (config.background_words == 0) throw DataError("synth: background vocabulary must be nonempty");

  const auto options = PreprocessOptions::defaults();
  Rng rng(config.rng_seed);
  SynthCorpus out;
  out.themes = themes.names();

  // Seed tokens per theme, used to keep planted vocabularies disjoint after preprocessing.
  std::vector<std::vector<std::vector<std::string>>> seed_tokens(T);
  std::map<std::string, std::set<std::size_t>> token_owner;
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& s : themes[t].seeds) {
      seed_tokens[t].push_back(pipeline_tokens(s, options));
      for (const auto& tok : seed_tokens[t].back()) token_owner[tok].insert(t);
    }
  }
  std::set<std::string> taken;
  for (const auto& [tok, owners] : token_owner) taken.insert(tok);
  out.planted.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < themes[t].seeds.size(); ++i) {
      const auto& toks = seed_tokens[t][i];
      if (toks.empty()) continue;
      const bool exclusive =
          std::all_of(toks.begin(), toks.end(), [&](const std::string& tok) { return token_owner[tok].size() == 1; });
      if (exclusive) out.planted[t].push_back(themes[t].seeds[i]);
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < config.filler_words; ++i) out.planted[t].push_back(invent_word(rng, options, taken));
  }
  for (std::size_t i = 0; i < config.background_words; ++i) out.background.push_back(invent_word(rng, options, taken));
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& w : out.planted[t]) out.word_themes[w].push_back(out.themes[t]);
    if (out.planted[t].empty()) throw DataError("synth: theme \"" + out.themes[t] + "\" has no planted vocabulary");
  }

  std::vector<std::vector<std::size_t>> single_word(T);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < out.planted[t].size(); ++i) {
      if (out.planted[t][i].find(' ') == std::string::npos) single_word[t].push_back(i);
    }
  }

  const int width = static_cast<int>(std::to_string(config.n_docs).size());
  for (std::size_t n = 0; n < config.n_docs; ++n) {
    std::vector<std::size_t> doc_themes;
    if (uniform01(rng) >= config.no_theme_prob) {
      if (config.single_theme) {
        doc_themes.push_back(sample_categorical(rng, config.theme_marginals));
      } else {
        while (doc_themes.empty()) {
          for (std::size_t t = 0; t < T; ++t) {
            if (uniform01(rng) < config.theme_marginals[t]) doc_themes.push_back(t);
          }
        }
      }
    }
    const std::size_t length = 2 + sample_poisson(rng, config.length_mean - 2.0);
    std::vector<std::string> words;
    while (words.size() < length) {
      if (doc_themes.empty() || uniform01(rng) < config.overlap_noise) {
        words.push_back(out.background[uniform_index(rng, out.background.size())]);
        continue;
      }
      const std::size_t t = doc_themes[uniform_index(rng, doc_themes.size())];
      const auto& vocab = out.planted[t];
      std::string item = length - words.size() == 1
                             ? vocab[single_word[t][uniform_index(rng, single_word[t].size())]]
                             : vocab[uniform_index(rng, vocab.size())];
      for (auto& w : split(item, ' ')) words.push_back(std::move(w));
    }
    RawComment c;
    std::string id = std::to_string(n + 1);
    c.id = "syn-" + std::string(static_cast<std::size_t>(width) - id.size(), '0') + id;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) c.text += ' ';
      c.text += words[i];
    }
    c.text += '.';
    c.text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(c.text[0])));
    std::vector<std::string> gold;
    for (std::size_t t : doc_themes) gold.push_back(out.themes[t]);
    c.gold = std::move(gold);
    out.comments.push_back(std::move(c));
  }
  return out;
}

std::string truth_json(const SynthCorpus& corpus) {
  nlohmann::ordered_json j;
  j["themes"] = corpus.themes;
  nlohmann::ordered_json planted = nlohmann::ordered_json::object();
  for (std::size_t t = 0; t < corpus.themes.size(); ++t) planted[corpus.themes[t]] = corpus.planted[t];
  j["planted"] = std::move(planted);
  j["background"] = corpus.background;
  nlohmann::ordered_json wt = nlohmann::ordered_json::object();
  for (const auto& [w, ts] : corpus.word_themes) wt[w] = ts;
  j["word_themes"] = std::move(wt);
  return j.dump(2) + "\n";
}

EmbeddingTable synthetic_embeddings(std::span<const RawComment> comments, const SynthCorpus& truth,
                                    const ThemeConfig& themes, std::size_t dim, double noise, std::uint64_t seed) {
  if (dim == 0) throw UsageError("synthetic embeddings: dim must be >= 1");
  const double scale = noise / std::sqrt(static_cast<double>(dim));
  std::vector<std::vector<double>> directions;
  for (const auto& name : truth.themes) {
    auto d = hashed_gaussian("theme:" + name, seed, dim, 1.0);
    double n = 0.0;
    for (double x : d) n += x * x;
    n = std::sqrt(n);
    for (double& x : d) x /= n;
    directions.push_back(std::move(d));
  }
  std::map<std::string, std::size_t> word_theme;
  for (std::size_t t = 0; t < truth.planted.size(); ++t) {
    for (const auto& item : truth.planted[t]) {
      for (const auto& w : words_of(item)) word_theme.emplace(w, t);
    }
  }
  auto text_vector = [&](std::string_view text) {
    std::vector<double> acc(dim, 0.0);
    for (const auto& w : words_of(text)) {
      auto v = hashed_gaussian("word:" + w, seed, dim, scale);
      if (auto it = word_theme.find(w); it != word_theme.end()) {
        for (std::size_t i = 0; i < dim; ++i) v[i] += directions[it->second][i];
      }
      for (std::size_t i = 0; i < dim; ++i) acc[i] += v[i];
    }
    double n = 0.0;
    for (double x : acc) n += x * x;
    n = std::sqrt(n);
    std::vector<float> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(n > 0.0 ? acc[i] / n : 0.0);
    return out;
  };
  EmbeddingTable table(dim);
  for (const auto& c : comments) table.add(RecordKind::document, c.id, text_vector(c.text));
  std::set<std::string> seen;
  for (const auto& t : themes.themes()) {
    for (const auto& s : t.seeds) {
      if (seen.insert(s).second) table.add(RecordKind::seed, s, text_vector(s));
    }
  }
  return table;
}

}  // namespace wstc
