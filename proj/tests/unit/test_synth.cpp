#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wstc/engine_xclass.hpp"
#include "wstc/error.hpp"
#include "wstc/text.hpp"

using namespace wstc;

TEST_CASE("no-theme rate and document length follow the configuration") {
  const auto& c = wstc::testing::planted();
  REQUIRE(c.comments.size() == 2000);
  std::size_t empty = 0;
  double words = 0.0;
  for (const auto& d : c.comments) {
    REQUIRE(d.gold.has_value());
    empty += d.gold->empty();
    words += static_cast<double>(split(d.text, ' ').size());
  }
  CHECK(std::abs(empty / 2000.0 - 0.14) <= 0.03);
  CHECK(std::abs(words / 2000.0 - 43.0) <= 4.3);
  CHECK(c.comments.front().id == "syn-0001");
  CHECK(c.comments.back().id == "syn-2000");
}

TEST_CASE("gold labels are exactly the generating themes") {
  const auto& c = wstc::testing::planted();
  std::map<std::string, std::size_t> owner;
  for (std::size_t t = 0; t < c.planted.size(); ++t) {
    for (const auto& item : c.planted[t]) {
      for (const auto& w : split(item, ' ')) owner.emplace(w, t);
    }
  }
  const std::set<std::string> background(c.background.begin(), c.background.end());
  for (const auto& d : c.comments) {
    std::set<std::string> gold(d.gold->begin(), d.gold->end());
    std::string body = d.text.substr(0, d.text.size() - 1);
    body[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(body[0])));
    for (const auto& w : split(body, ' ')) {
      auto it = owner.find(w);
      if (it == owner.end()) {
        CHECK(background.count(w) == 1);
      } else {
        CHECK(gold.count(c.themes[it->second]) == 1);
      }
    }
  }
}

TEST_CASE("planted vocabularies are disjoint and survive preprocessing") {
  const auto& c = wstc::testing::planted();
  const auto opt = PreprocessOptions::defaults();
  std::map<std::string, std::size_t> token_theme;
  for (std::size_t t = 0; t < c.planted.size(); ++t) {
    CHECK(c.planted[t].size() > 40);
    for (const auto& item : c.planted[t]) {
      for (const auto& tok : pipeline_tokens(item, opt)) {
        const auto it = token_theme.emplace(tok, t).first;
        CHECK(it->second == t);
      }
    }
  }
  for (const auto& w : c.background) CHECK(pipeline_tokens(w, opt) == std::vector<std::string>{w});
}

TEST_CASE("same seed, same corpus") {
  SynthConfig cfg;
  cfg.n_docs = 200;
  cfg.rng_seed = 3;
  const auto a = generate_corpus(default_theme_config(), cfg);
  const auto b = generate_corpus(default_theme_config(), cfg);
  std::ostringstream sa, sb;
  write_corpus_jsonl(sa, a.comments);
  write_corpus_jsonl(sb, b.comments);
  CHECK(sa.str() == sb.str());
  CHECK(truth_json(a) == truth_json(b));
  cfg.rng_seed = 4;
  std::ostringstream sc;
  write_corpus_jsonl(sc, generate_corpus(default_theme_config(), cfg).comments);
  CHECK(sc.str() != sa.str());
}

TEST_CASE("single-theme noiseless corpus is labelled perfectly by keywords") {
  SynthConfig cfg;
  cfg.n_docs = 500;
  cfg.overlap_noise = 0.0;
  cfg.single_theme = true;
  const auto c = generate_corpus(default_theme_config(), cfg);
  for (const auto& d : c.comments) CHECK(d.gold->size() <= 1);
  const auto r = wstc::testing::label(EngineKind::keyword, c.comments);
  // Filler words carry no seed, so only documents mentioning a seed can be recovered; with
  // fillers switched off every themed document does.
  cfg.filler_words = 0;
  const auto pure = generate_corpus(default_theme_config(), cfg);
  const auto m = wstc::testing::evaluate(wstc::testing::label(EngineKind::keyword, pure.comments), pure.comments);
  for (const auto& t : m.themes) CHECK(t.f1 == 1.0);
  CHECK(wstc::testing::evaluate(r, c.comments).macro_precision == 1.0);
}

TEST_CASE("invalid configurations") {
  SynthConfig cfg;
  cfg.theme_marginals = {0.5};
  CHECK_THROWS_AS(generate_corpus(default_theme_config(), cfg), DataError);
  cfg.theme_marginals.assign(6, 0.0);
  CHECK_THROWS_AS(generate_corpus(default_theme_config(), cfg), DataError);
  cfg.no_theme_prob = 1.0;
  CHECK_NOTHROW(generate_corpus(default_theme_config(), cfg));
  cfg = {};
  cfg.length_mean = 1.0;
  CHECK_THROWS_AS(generate_corpus(default_theme_config(), cfg), DataError);
}

TEST_CASE("synthetic embeddings reflect planted themes") {
  const auto& t = wstc::testing::planted_embeddings();
  CHECK(t.num_documents() == 2000);
  CHECK(t.dim() == 32);
  for (const auto& s : all_seed_strings(default_theme_config())) CHECK(t.seed(s) != nullptr);
  const auto& a = *t.seed("radiotherapy");
  const auto& b = *t.seed("chemotherapy");
  const auto& z = *t.seed("wife");
  double ab = 0.0, az = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    az += a[i] * z[i];
  }
  CHECK(ab > az);
}
