#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wstc/engine_glda.hpp"
#include "wstc/error.hpp"

using namespace wstc;

namespace {

const wstc::testing::Prepared& planted_prep() {
  static const auto p = wstc::testing::prepare(wstc::testing::planted().comments, default_theme_config());
  return p;
}

void check_simplex(const std::vector<std::vector<double>>& rows) {
  for (const auto& r : rows) {
    double s = 0.0;
    for (double x : r) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(std::abs(s - 1.0) < 1e-9);
  }
}

}  // namespace

TEST_CASE("seeds dominate their own theme's word distribution") {
  const auto& p = planted_prep();
  const auto m = fit_glda(p.corpus.terms, p.corpus.vocab.size(), &p.seeds, 6, GldaParams{});
  std::vector<std::size_t> count(p.corpus.vocab.size(), 0);
  for (const auto& d : p.corpus.terms) {
    for (auto w : d.unigrams) ++count[w];
    for (auto w : d.bigrams) ++count[w];
  }
  std::size_t checked = 0;
  for (std::size_t t = 0; t < 6; ++t) {
    for (TermId w : p.seeds.themes[t].terms) {
      if (count[w] < 5) continue;
      ++checked;
      for (std::size_t u = 0; u < 6; ++u) {
        if (u != t) CHECK_MESSAGE(m.phi[t][w] > m.phi[u][w], p.corpus.vocab.term(w));
      }
    }
  }
  CHECK(checked > 30);
  check_simplex(m.phi);
  check_simplex(m.theta);
}

TEST_CASE("boost 1 reproduces unguided LDA bit for bit") {
  const auto& p = planted_prep();
  std::vector<DocTerms> docs(p.corpus.terms.begin(), p.corpus.terms.begin() + 300);
  GldaParams params;
  params.iterations = 40;
  params.boost = 1.0;
  params.rng_seed = 5;
  const auto guided = fit_glda(docs, p.corpus.vocab.size(), &p.seeds, 6, params);
  const auto plain = fit_glda(docs, p.corpus.vocab.size(), nullptr, 6, params);
  CHECK(guided.phi == plain.phi);
  CHECK(guided.theta == plain.theta);
  check_simplex(plain.phi);
  check_simplex(plain.theta);
}

TEST_CASE("fixed seed gives identical estimates") {
  const auto& p = planted_prep();
  std::vector<DocTerms> docs(p.corpus.terms.begin(), p.corpus.terms.begin() + 200);
  GldaParams params;
  params.iterations = 30;
  const auto a = fit_glda(docs, p.corpus.vocab.size(), &p.seeds, 6, params);
  const auto b = fit_glda(docs, p.corpus.vocab.size(), &p.seeds, 6, params);
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);
  params.rng_seed = 1;
  const auto c = fit_glda(docs, p.corpus.vocab.size(), &p.seeds, 6, params);
  CHECK(a.theta != c.theta);
}

TEST_CASE("document scores are themed theta entries") {
  const auto& p = planted_prep();
  std::vector<DocTerms> docs(p.corpus.terms.begin(), p.corpus.terms.begin() + 100);
  GldaParams params;
  params.iterations = 20;
  const auto m = fit_glda(docs, p.corpus.vocab.size(), &p.seeds, 6, params);
  CHECK(m.num_topics == 8);
  const auto s = glda_doc_scores(m, 3);
  REQUIRE(s.size() == 6);
  double sum = 0.0;
  for (std::size_t t = 0; t < 6; ++t) {
    CHECK(s[t] == m.theta[3][t]);
    sum += s[t];
  }
  CHECK(sum <= 1.0 + 1e-12);
  CHECK_THROWS_AS(glda_doc_scores(m, 100), EngineError);
}

TEST_CASE("glda parameter validation") {
  const auto& p = planted_prep();
  GldaParams params;
  params.iterations = 0;
  CHECK_THROWS_AS(fit_glda(p.corpus.terms, p.corpus.vocab.size(), &p.seeds, 6, params), UsageError);
  params = {};
  params.boost = 0.5;
  CHECK_THROWS_AS(fit_glda(p.corpus.terms, p.corpus.vocab.size(), &p.seeds, 6, params), UsageError);
  CHECK_THROWS_AS(fit_glda({}, p.corpus.vocab.size(), nullptr, 6, GldaParams{}), DataError);
}
