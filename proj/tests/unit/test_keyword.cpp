#include "doctest.h"
#include "support.hpp"
#include "wstc/engine_keyword.hpp"

using namespace wstc;
using wstc::testing::doc;

namespace {

std::vector<RawComment> sample() {
  return {doc("a", "I am thankful to all the hospital staff"),
          doc("b", "My wife helps because I have difficulty walking to the shops"),
          doc("c", "Nothing much else to report today"),
          doc("d", "The staff at the hospital were lovely, my wife agreed"),
          doc("e", "Walking is a difficulty, report shops today"),
          doc("f", "Asthma and the fear of pain")};
}

}  // namespace

TEST_CASE("seed presence drives keyword scores") {
  const auto& themes = default_theme_config();
  const auto p = wstc::testing::prepare(sample(), themes, false, 1);
  const auto fit = fit_keyword(p.corpus, themes, p.seeds);
  REQUIRE(fit.scores.size() == 6);
  CHECK(fit.scores[0] == std::vector<double>{1, 0, 0, 0, 0, 0});
  // "wife" and the bigram "difficulti walk" hit two themes at once.
  CHECK(fit.scores[1] == std::vector<double>{0, 0, 0, 0, 1, 1});
  CHECK(fit.scores[2] == std::vector<double>(6, 0.0));
  CHECK(fit.scores[5] == std::vector<double>{0, 1, 1, 1, 0, 0});
}

TEST_CASE("adding tokens never lowers a keyword score") {
  const auto& themes = default_theme_config();
  const auto p = wstc::testing::prepare(sample(), themes, false, 1);
  for (const auto& d : p.corpus.terms) {
    const auto base = keyword_scores(d, p.seeds);
    DocTerms more = d;
    for (TermId t = 0; t < p.corpus.vocab.size(); t += 3) more.unigrams.push_back(t);
    const auto after = keyword_scores(more, p.seeds);
    for (std::size_t t = 0; t < base.size(); ++t) CHECK(after[t] >= base[t]);
  }
}

TEST_CASE("keyword model ranks co-occurring terms") {
  const auto& themes = default_theme_config();
  const auto p = wstc::testing::prepare(sample(), themes, false, 1);
  const auto fit = fit_keyword(p.corpus, themes, p.seeds);
  const auto table = fit.model->topic_words(3);
  REQUIRE(table.size() == 6);
  REQUIRE_FALSE(table[0].terms.empty());
  CHECK(table[0].terms[0].weight == doctest::Approx(1.0));
  CHECK(table[0].terms[0].is_seed);
  // The only comorbidity document ranks its seed first.
  REQUIRE_FALSE(table[1].terms.empty());
  CHECK(table[1].terms[0].term == "asthma");
  CHECK(table[1].terms[0].is_seed);
}

TEST_CASE("planted corpus with seed-presence gold is recovered perfectly") {
  SynthConfig cfg;
  cfg.n_docs = 400;
  cfg.overlap_noise = 0.0;
  cfg.single_theme = true;
  cfg.filler_words = 0;
  const auto corpus = generate_corpus(default_theme_config(), cfg);
  const auto r = wstc::testing::label(EngineKind::keyword, corpus.comments);
  const auto m = wstc::testing::evaluate(r, corpus.comments);
  for (const auto& t : m.themes) {
    CHECK(t.precision == 1.0);
    CHECK(t.recall == 1.0);
  }
}
