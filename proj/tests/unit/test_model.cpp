#include "doctest.h"
#include "support.hpp"
#include "wstc/error.hpp"
#include "wstc/explain.hpp"
#include "wstc/model.hpp"

using namespace wstc;
using ojson = nlohmann::ordered_json;

namespace {

TermWeightModel small_model() {
  return TermWeightModel("corex", {"A", "B"}, {"nurs", "pain", "sleep"}, {{true, false, false}, {false, true, false}},
                         {{0.5, 0.2, 0.5}, {0.0, 0.9, -1.0}}, ojson{{"k", 1}}, ojson{{"tc", {0.1, 0.2}}});
}

}  // namespace

TEST_CASE("ranking by weight with index tie-break") {
  const auto m = small_model();
  const auto t = m.topic_words(15);
  REQUIRE(t.size() == 2);
  REQUIRE(t[0].terms.size() == 3);
  CHECK(t[0].terms[0].term == "nurs");
  CHECK(t[0].terms[0].is_seed);
  CHECK(t[0].terms[1].term == "sleep");
  CHECK(t[0].terms[2].term == "pain");
  REQUIRE(t[1].terms.size() == 1);
  CHECK(t[1].terms[0].term == "pain");
  CHECK(m.topic_words(1)[0].terms.size() == 1);
}

TEST_CASE("model json round-trip") {
  const auto m = small_model();
  const auto j = m.to_json();
  CHECK(j["format"] == "wstc-model");
  CHECK(j["version"] == kModelFormatVersion);
  const auto back = model_from_json(j);
  CHECK(back->to_json().dump() == j.dump());
  CHECK(back->engine() == "corex");

  auto broken = j;
  broken["version"] = 99;
  CHECK_THROWS_AS(model_from_json(broken), FormatError);
  broken = j;
  broken.erase("weights");
  CHECK_THROWS_AS(model_from_json(broken), FormatError);

  const auto path = wstc::testing::scratch_dir("model") / "m.json";
  wstc::testing::spit(path, j.dump());
  CHECK(load_model(path)->to_json() == j);
  wstc::testing::spit(path, "{nope");
  CHECK_THROWS_AS(load_model(path), FormatError);
}

TEST_CASE("engine models survive serialization") {
  const auto& c = wstc::testing::planted().comments;
  const std::vector<RawComment> sub(c.begin(), c.begin() + 300);
  for (auto engine : {EngineKind::keyword, EngineKind::corex, EngineKind::glda}) {
    const auto r = wstc::testing::label(engine, sub, nullptr, engine == EngineKind::glda
                                                                  ? std::map<std::string, std::string>{{"iterations", "20"}}
                                                                  : std::map<std::string, std::string>{});
    const auto j = r.model->to_json();
    const auto back = model_from_json(j);
    CHECK(back->to_json().dump() == j.dump());
    const auto a = extract_keywords(*r.model, 15), b = extract_keywords(*back, 15);
    CHECK(render_keywords_csv({a}) == render_keywords_csv({b}));
  }
}

TEST_CASE("keyword tables") {
  const auto m = small_model();
  CHECK_THROWS_AS(extract_keywords(m, 0), UsageError);
  const auto k = extract_keywords(m, 2);
  CHECK(k.engine == "corex");
  const auto md = render_keywords_markdown({k, k}, 2);
  CHECK(md.find("**nurs**") != std::string::npos);
  CHECK(md.find("| A |") != std::string::npos);
  const auto csv = render_keywords_csv({k});
  CHECK(csv.rfind("engine,theme,rank,term,weight,is_seed\n", 0) == 0);
  CHECK(csv.find("corex,\"A\",1,\"nurs\"") != std::string::npos);
}

TEST_CASE("nurse is flagged as a seed of the first theme") {
  const std::vector<RawComment> c{wstc::testing::doc("a", "The nurse was kind and the nurse listened"),
                                  wstc::testing::doc("b", "A nurse phoned me about pain"),
                                  wstc::testing::doc("c", "pain and sleep are hard"),
                                  wstc::testing::doc("d", "asthma, fear, my wife and travel")};
  const auto r = wstc::testing::label(EngineKind::keyword, c);
  const auto k = extract_keywords(*r.model, 15);
  bool found = false;
  for (const auto& t : k.table[0].terms) {
    if (t.term == "nurse") found = t.is_seed;
  }
  CHECK(found);
  CHECK(k.table.size() == 6);
}
