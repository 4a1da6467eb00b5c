#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/embeddings.hpp"
#include "wstc/eval.hpp"
#include "wstc/pipeline.hpp"
#include "wstc/synth.hpp"
#include "wstc/themes.hpp"

namespace wstc::testing {

inline constexpr std::uint64_t kPlantedSeed = 0;

/// Default planted corpus (2000 docs, six default themes); built once per process.
inline const SynthCorpus& planted(double overlap_noise = 0.1) {
  static std::map<double, SynthCorpus> cache;
  auto it = cache.find(overlap_noise);
  if (it == cache.end()) {
    SynthConfig cfg;
    cfg.overlap_noise = overlap_noise;
    cfg.rng_seed = kPlantedSeed;
    it = cache.emplace(overlap_noise, generate_corpus(default_theme_config(), cfg)).first;
  }
  return it->second;
}

inline const EmbeddingTable& planted_embeddings(double overlap_noise = 0.1) {
  static std::map<double, EmbeddingTable> cache;
  auto it = cache.find(overlap_noise);
  if (it == cache.end()) {
    const auto& c = planted(overlap_noise);
    it = cache.emplace(overlap_noise, synthetic_embeddings(c.comments, c, default_theme_config(), 32, 1.0, kPlantedSeed))
             .first;
  }
  return it->second;
}

/// Corpus and resolved seeds exactly as the pipeline builds them.
struct Prepared {
  PreparedCorpus corpus;
  ResolvedSeeds seeds;
};

inline Prepared prepare(const std::vector<RawComment>& comments, const ThemeConfig& themes, bool unigrams_only = false,
                        std::size_t min_df = 2) {
  const auto options = PreprocessOptions::defaults();
  Prepared p{prepare_corpus(comments, options, min_df, seed_keys(themes, options)), {}};
  p.seeds = resolve_seeds(themes, p.corpus.vocab, options, unigrams_only);
  return p;
}

inline LabelResult label(EngineKind engine, const std::vector<RawComment>& comments,
                         const EmbeddingTable* emb = nullptr, std::map<std::string, std::string> params = {},
                         const ThemeConfig& themes = default_theme_config()) {
  LabelRequest req;
  req.engine = engine;
  req.comments = comments;
  req.themes = themes;
  req.embeddings = emb;
  req.rng_seed = kPlantedSeed;
  req.params = std::move(params);
  return run_label(req);
}

inline MetricsReport evaluate(const LabelResult& r, const std::vector<RawComment>& comments) {
  return per_theme_metrics(r.predictions, gold_from_corpus(comments));
}

inline RawComment doc(std::string id, std::string text, std::optional<std::vector<std::string>> gold = std::nullopt) {
  return RawComment{std::move(id), std::move(text), std::move(gold)};
}

/// Three themes whose seed vectors are orthonormal axes and whose documents sit exactly on
/// their gold theme's axis; each theme's texts use words of its own only.
struct Constructed {
  ThemeConfig themes;
  std::vector<RawComment> comments;
  EmbeddingTable table;
};

inline Constructed constructed(std::size_t per_theme = 20) {
  const std::vector<std::vector<std::string>> words{{"pain", "nausea", "cough", "fatigue", "sleep"},
                                                    {"wife", "money", "job", "family", "friend"},
                                                    {"travel", "drive", "diet", "hobby", "stairs"}};
  Constructed c{ThemeConfig({{"Body", {"pain", "cough"}}, {"Social", {"wife", "job"}}, {"Daily", {"travel", "diet"}}}),
                {},
                EmbeddingTable(4)};
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<float> axis(4, 0.0f);
    axis[t] = 1.0f;
    for (const auto& s : c.themes[t].seeds) c.table.add(RecordKind::seed, s, axis);
    for (std::size_t i = 0; i < per_theme; ++i) {
      const auto& w = words[t];
      std::string text = w[i % 5] + " " + w[(i + 1) % 5] + " " + w[(i * 2 + 3) % 5];
      std::string id = "k" + std::to_string(t) + "-" + std::to_string(i);
      c.table.add(RecordKind::document, id, axis);
      c.comments.push_back(RawComment{id, text, std::vector<std::string>{c.themes[t].name}});
    }
  }
  return c;
}

/// Scratch directory under the build tree (or the system temp dir).
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("WSTC_TMP");
  std::filesystem::path dir = base ? std::filesystem::path(base) : std::filesystem::temp_directory_path() / "wstc_tests";
  dir /= name;
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace wstc::testing
