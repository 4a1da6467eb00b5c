#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wstc/error.hpp"
#include "wstc/text.hpp"

using namespace wstc;
using wstc::testing::doc;

namespace {

std::vector<RawComment> parse(const std::string& text, CorpusFormat f = CorpusFormat::jsonl) {
  std::istringstream in(text);
  return parse_corpus(in, f, "mem");
}

std::set<std::string> token_set(const ProcessedDoc& d) { return {d.tokens.begin(), d.tokens.end()}; }

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
  return s;
}

}  // namespace

TEST_CASE("jsonl corpus loading") {
  const auto c = parse(R"({"id":"a","text":"one"}
{"id":"b","text":"two","gold":["X","Y"]}

{"id":"c","text":""}
)");
  REQUIRE(c.size() == 3);
  CHECK(c[1].gold == std::vector<std::string>{"X", "Y"});
  CHECK_FALSE(c[0].gold.has_value());
  CHECK(c[2].text.empty());
}

TEST_CASE("missing text is a parse error naming the line") {
  try {
    parse("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"b\"}\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("{not json}\n"), ParseError);
  CHECK_THROWS_AS(parse("{\"id\":\"\",\"text\":\"x\"}\n"), ParseError);
}

TEST_CASE("duplicate ids are rejected") {
  CHECK_THROWS_AS(parse("{\"id\":\"c1\",\"text\":\"x\"}\n{\"id\":\"c1\",\"text\":\"y\"}\n"), DataError);
}

TEST_CASE("csv corpus with quoting and gold lists") {
  const auto c = parse("id,text,gold\nc1,\"hello, \"\"world\"\"\nsecond line\",A;B\nc2,plain,\n", CorpusFormat::csv);
  REQUIRE(c.size() == 2);
  CHECK(c[0].text == "hello, \"world\"\nsecond line");
  CHECK(c[0].gold == std::vector<std::string>{"A", "B"});
  CHECK(c[1].gold == std::vector<std::string>{});
  CHECK(corpus_format_for("x/y.CSV") == CorpusFormat::csv);
  CHECK(corpus_format_for("x/y.jsonl") == CorpusFormat::jsonl);
}

TEST_CASE("jsonl writer round-trips") {
  std::vector<RawComment> c{doc("a", "t\"x\"\n2", std::vector<std::string>{"A"}), doc("b", "")};
  std::ostringstream out;
  write_corpus_jsonl(out, c);
  const auto back = parse(out.str());
  REQUIRE(back.size() == 2);
  CHECK(back[0].text == c[0].text);
  CHECK(back[0].gold == c[0].gold);
  CHECK_FALSE(back[1].gold.has_value());
}

TEST_CASE("porter stemming of pipeline words") {
  CHECK(porter_stem("worried") == "worri");
  CHECK(porter_stem("daily") == "daili");
  CHECK(porter_stem("peripheral") == "peripher");
  CHECK(porter_stem("neuropathy") == "neuropathi");
  CHECK(porter_stem("hospital") == "hospit");
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("hopping") == "hop");
  CHECK(porter_stem("relational") == "relate");
  CHECK(porter_stem("peripher") == "peripher");
  CHECK(porter_stem("age") == "age");
  CHECK(porter_stem("cope") == "cope");
  CHECK(porter_stem("embarrassment") == "embarrass");
  CHECK(porter_stem("pain") == "pain");
  CHECK(porter_stem("Pain") == "Pain");
}

TEST_CASE("stemming to a fixed point") {
  for (const std::string w : {"generalizations", "operational", "activities", "conditional", "hopefulness"}) {
    const auto s = light_stem(w);
    CHECK(light_stem(s) == s);
  }
}

TEST_CASE("edit distance") {
  CHECK(edit_distance("kitten", "sitting") == 3);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("pain", "pain") == 0);
}

TEST_CASE("documents with one or fewer surviving tokens are removed") {
  const auto opt = PreprocessOptions::defaults();
  CHECK(pipeline_tokens("I've been worried", opt) == std::vector<std::string>{"worri"});
  CHECK_FALSE(preprocess(doc("x", "I've been worried"), opt).has_value());
  CHECK_FALSE(preprocess(doc("x", "ok"), opt).has_value());
  CHECK_FALSE(preprocess(doc("x", ""), opt).has_value());
}

TEST_CASE("bigrams are formed from adjacent surviving tokens") {
  const auto opt = PreprocessOptions::defaults();
  const auto d = preprocess(doc("x", "bowel movement pain daily"), opt);
  REQUIRE(d.has_value());
  CHECK(d->tokens == std::vector<std::string>{"bowel", "movement", "pain", "daili"});
  CHECK(d->bigrams == std::vector<std::string>{"bowel movement", "movement pain", "pain daili"});
  const auto e = preprocess(doc("y", "The bowel and the movement"), opt);
  REQUIRE(e.has_value());
  CHECK(e->bigrams == std::vector<std::string>{"bowel movement"});
}

TEST_CASE("contractions expand before tokenizing") {
  const auto opt = PreprocessOptions::defaults();
  const auto raw = raw_tokens("I can't COPE, won't!", opt);
  CHECK(std::find(raw.begin(), raw.end(), "cannot") != raw.end());
  CHECK(std::find(raw.begin(), raw.end(), "cope") != raw.end());
  CHECK(std::find(raw.begin(), raw.end(), "will") != raw.end());
}

TEST_CASE("seed terms share the pipeline") {
  const auto opt = PreprocessOptions::defaults();
  CHECK(preprocess_seed_term("peripheral neuropathy", opt) == "peripher neuropathi");
  CHECK(preprocess_seed_term("pain", opt) == "pain");
  CHECK(preprocess_seed_term("old age", opt) == "old age");
  CHECK_FALSE(preprocess_seed_term("the", opt).has_value());
}

TEST_CASE("preprocessing is idempotent on its own output") {
  const auto opt = PreprocessOptions::defaults();
  const auto& corpus = wstc::testing::planted();
  std::vector<std::string> texts{"I've been really worried about my husband's hospital appointments",
                                 "The nurses were generalizing; operational activities happily continued."};
  for (std::size_t i = 0; i < 200; ++i) texts.push_back(corpus.comments[i].text);
  for (const auto& t : texts) {
    const auto first = preprocess(doc("x", t), opt);
    REQUIRE(first.has_value());
    const auto second = preprocess(doc("x", join(first->tokens)), opt);
    REQUIRE(second.has_value());
    CHECK(token_set(*second) == token_set(*first));
  }
}

TEST_CASE("spelling correction uses frequent neighbours only") {
  SpellCorrector sc({{"pain", 50}, {"pian", 2}, {"rare", 1}, {"rase", 1}}, {"rare"}, 5.0);
  CHECK(sc.correct("pian") == "pain");
  CHECK(sc.correct("pain") == "pain");
  CHECK(sc.correct("rase") == "rase");
  CHECK(sc.correct("rare") == "rare");
}

TEST_CASE("vocabulary keeps terms by document frequency plus seeds") {
  const auto opt = PreprocessOptions::defaults();
  std::vector<ProcessedDoc> docs;
  for (const auto& [id, text] : std::vector<std::pair<std::string, std::string>>{
           {"a", "pain bowel movement"}, {"b", "pain fatigue"}, {"c", "sleep fatigue"}}) {
    docs.push_back(*preprocess(doc(id, text), opt));
  }
  const auto v = Vocabulary::build(docs, 2);
  CHECK(v.find("pain").has_value());
  CHECK(v.find("fatigue").has_value());
  CHECK_FALSE(v.find("sleep").has_value());
  CHECK_FALSE(v.find("bowel movement").has_value());

  const std::vector<std::string> keep{"bowel movement", "never seen"};
  const auto w = Vocabulary::build(docs, 5, keep);
  REQUIRE(w.size() == 1);
  CHECK(w.term(0) == "bowel movement");
  CHECK(w.is_bigram(0));
  CHECK(w.df(0) == 1);

  const auto all = Vocabulary::build(docs, 1);
  CHECK(std::is_sorted(all.terms().begin(), all.terms().end()));
  CHECK(all.serialize() == Vocabulary::build(docs, 1).serialize());
  CHECK_THROWS_AS(Vocabulary::build({}, 1), DataError);
  CHECK_THROWS_AS(Vocabulary::build(docs, 0), UsageError);
}

TEST_CASE("tf-idf of a single document with two distinct terms") {
  // N = 1, df = 1: idf = ln(2/2) + 1 = 1, so both raw weights are 1 and normalize to 1/sqrt(2).
  const auto two = Vocabulary::from_parts({"fatigue", "pain"}, {1, 1}, 1);
  std::vector<DocTerms> single{DocTerms{{1, 0}, {}}};
  const auto m2 = tfidf(single, two);
  REQUIRE(m2.rows[0].size() == 2);
  for (const auto& e : m2.rows[0]) CHECK(e.weight == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m2.row_norms[0] == doctest::Approx(std::sqrt(2.0)));

  const auto opt = PreprocessOptions::defaults();
  std::vector<ProcessedDoc> docs{*preprocess(doc("a", "pain fatigue"), opt)};
  const auto v = Vocabulary::build(docs, 1);
  std::vector<DocTerms> terms{index_doc(docs[0], v)};
  const auto m = tfidf(terms, v);
  // Unigrams "fatigue", "pain" and the bigram "pain fatigu" all have tf 1 and idf 1.
  REQUIRE(m.rows[0].size() == 3);
  for (const auto& e : m.rows[0]) CHECK(e.weight == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  // Unigrams alone: two equal weights normalize to 1/sqrt(2).
  const std::vector<TermId> uni(terms[0].unigrams);
  const auto row = tfidf_row(uni, v);
  REQUIRE(row.size() == 2);
  CHECK(row[0].weight == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(row[1].weight == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("tf-idf edge cases and norms") {
  CHECK(smoothed_idf(1, 1) == doctest::Approx(1.0));
  CHECK(smoothed_idf(1, 3) == doctest::Approx(std::log(2.0) + 1.0));
  const auto opt = PreprocessOptions::defaults();
  std::vector<ProcessedDoc> docs{*preprocess(doc("a", "pain pain"), opt), *preprocess(doc("b", "sleep fatigue"), opt)};
  const auto v = Vocabulary::build(docs, 1);
  const auto pain = *v.find("pain");
  const std::vector<TermId> only_pain{pain, pain, pain};
  const auto row = tfidf_row(only_pain, v);
  REQUIRE(row.size() == 1);
  CHECK(row[0].weight == doctest::Approx(1.0));
  CHECK(row[0].tf == 3.0);

  const auto& planted = wstc::testing::planted();
  const auto p = wstc::testing::prepare(planted.comments, default_theme_config());
  for (const auto& r : p.corpus.matrix.rows) {
    double s = 0.0;
    for (const auto& e : r) {
      CHECK(e.weight >= 0.0);
      s += e.weight * e.weight;
    }
    if (!r.empty()) CHECK(std::abs(std::sqrt(s) - 1.0) < 1e-9);
  }
  for (const auto& d : p.corpus.docs) CHECK(d.tokens.size() >= 2);
}
