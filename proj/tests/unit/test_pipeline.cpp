#include "doctest.h"
#include "support.hpp"
#include "wstc/error.hpp"

using namespace wstc;
using wstc::testing::doc;

namespace {

std::vector<RawComment> small() {
  return {doc("a", "The nurse at the hospital helped with my pain"),
          doc("b", "ok"),
          doc("c", "Pain and fatigue every day, the nurse said rest"),
          doc("d", "My wife drives me to the hospital for treatment"),
          doc("e", "Treatment made me tired, wife worried about money"),
          doc("f", "Arthritis and a stroke slowed me down")};
}

}  // namespace

TEST_CASE("engine names and defaults") {
  for (const std::string n : {"keyword", "corex", "glda", "westclass", "xclass", "bertopic"}) {
    CHECK(engine_name(parse_engine(n)) == n);
  }
  CHECK_THROWS_AS(parse_engine("lda"), UsageError);
  CHECK(default_policy(EngineKind::glda) == PolicyKind::simplex);
  CHECK(default_policy(EngineKind::bertopic) == PolicyKind::cluster);
  CHECK(default_policy(EngineKind::westclass) == PolicyKind::probability);
  CHECK(needs_embeddings(EngineKind::xclass));
  CHECK_FALSE(needs_embeddings(EngineKind::corex));
}

TEST_CASE("parameter parsing") {
  const auto p = parse_params({"a=1", " b = x y "});
  CHECK(p.at("a") == "1");
  CHECK(p.at("b") == "x y");
  CHECK_THROWS_AS(parse_params({"novalue"}), UsageError);
  CHECK_THROWS_AS(parse_params({"=1"}), UsageError);
  CHECK_THROWS_AS(parse_params({"a=1", "a=2"}), UsageError);
}

TEST_CASE("unknown or malformed engine parameters are usage errors") {
  CHECK_THROWS_WITH_AS(wstc::testing::label(EngineKind::corex, small(), nullptr, {{"bogus", "1"}}),
                       doctest::Contains("bogus"), UsageError);
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::corex, small(), nullptr, {{"max_iter", "ten"}}), UsageError);
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::glda, small(), nullptr, {{"alpha", "0.1x"}}), UsageError);
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::keyword, small(), nullptr, {{"k_extra", "1"}}), UsageError);
}

TEST_CASE("engines needing embeddings refuse to run without them") {
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::xclass, small()), UsageError);
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::bertopic, small()), UsageError);
}

TEST_CASE("removed documents stay in the output, flagged") {
  const auto r = wstc::testing::label(EngineKind::keyword, small());
  REQUIRE(r.predictions.docs.size() == 6);
  const auto& b = r.predictions.docs[1];
  CHECK(b.id == "b");
  CHECK(b.removed);
  CHECK(b.labels.empty());
  CHECK(b.scores == std::vector<double>(6, 0.0));
  bool warned = false;
  for (const auto& w : r.warnings) warned |= w.find("\"b\"") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("run metadata and threshold routing") {
  LabelRequest req;
  req.engine = EngineKind::corex;
  req.comments = small();
  req.themes = default_theme_config();
  req.threshold = 0.7;
  req.rng_seed = 9;
  const auto r = run_label(req);
  const auto& p = r.predictions;
  CHECK(p.policy.kind == PolicyKind::probability);
  CHECK(p.policy.threshold == 0.7);
  CHECK(p.meta.rng_seed == 9);
  CHECK(p.meta.params["anchor_strength"] == 4.0);
  CHECK(p.meta.params["min_df"] == 2);
  CHECK(p.meta.config_hash.size() == 16);
  CHECK(p.meta.corpus_hash == corpus_hash(req.comments));
  CHECK(run_label(req).predictions.meta.config_hash == p.meta.config_hash);
  req.rng_seed = 10;
  CHECK(run_label(req).predictions.meta.config_hash != p.meta.config_hash);

  req.engine = EngineKind::glda;
  req.params = {{"iterations", "10"}};
  req.threshold = 0.3;
  const auto g = run_label(req);
  CHECK(g.predictions.policy.kind == PolicyKind::simplex);
  CHECK(g.predictions.policy.floor == 0.3);
  CHECK(g.predictions.policy.num_topics == 8);

  req.threshold = 1.5;
  CHECK_THROWS_AS(run_label(req), UsageError);
}

TEST_CASE("cluster policy ignores the threshold with a warning") {
  const auto c = wstc::testing::constructed();
  LabelRequest req;
  req.engine = EngineKind::bertopic;
  req.comments = c.comments;
  req.themes = c.themes;
  req.embeddings = &c.table;
  req.threshold = 0.9;
  const auto r = run_label(req);
  bool warned = false;
  for (const auto& w : r.warnings) warned |= w.find("threshold ignored") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("embedding coverage is checked before fitting") {
  auto c = wstc::testing::constructed();
  c.comments.push_back(doc("c7", "pain cough pain"));
  LabelRequest req;
  req.engine = EngineKind::xclass;
  req.comments = c.comments;
  req.themes = c.themes;
  req.embeddings = &c.table;
  CHECK_THROWS_WITH_AS(run_label(req), doctest::Contains("\"c7\""), DataError);
}

TEST_CASE("empty inputs") {
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::keyword, {}), DataError);
  CHECK_THROWS_AS(wstc::testing::label(EngineKind::keyword, {doc("a", "ok"), doc("b", "the")}), DataError);
}
