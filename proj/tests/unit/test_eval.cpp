#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wstc/error.hpp"
#include "wstc/util.hpp"

using namespace wstc;

namespace {

PredictionSet make_preds(const std::vector<std::string>& themes, const std::vector<std::vector<std::size_t>>& labels) {
  PredictionSet p;
  p.engine = "test";
  p.themes = themes;
  for (std::size_t d = 0; d < labels.size(); ++d) {
    p.docs.push_back({"d" + std::to_string(d), ScoreVector(themes.size(), 0.0), labels[d], false});
  }
  return p;
}

GoldMap make_gold(const std::vector<std::string>& themes, const std::vector<std::vector<std::size_t>>& labels) {
  GoldMap g;
  for (std::size_t d = 0; d < labels.size(); ++d) {
    auto& v = g["d" + std::to_string(d)];
    for (auto t : labels[d]) v.push_back(themes[t]);
  }
  return g;
}

}  // namespace

TEST_CASE("hand-counted confusion for one theme") {
  // 10 docs: TP=2, FP=1, FN=1, TN=6.
  const std::vector<std::vector<std::size_t>> pred{{0}, {0}, {0}, {}, {}, {}, {}, {}, {}, {}};
  const std::vector<std::vector<std::size_t>> gold{{0}, {0}, {}, {0}, {}, {}, {}, {}, {}, {}};
  const std::vector<std::string> themes{"A"};
  const auto r = per_theme_metrics(make_preds(themes, pred), make_gold(themes, gold));
  const auto& m = r.themes[0];
  CHECK(m.counts == Confusion{2, 1, 1, 6});
  CHECK(m.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.accuracy == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("perfect predictions and an absent theme") {
  const std::vector<std::string> themes{"A", "B", "C"};
  std::vector<std::vector<std::size_t>> labels;
  for (std::size_t d = 0; d < 10; ++d) labels.push_back(d % 2 ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{1});
  const auto r = per_theme_metrics(make_preds(themes, labels), make_gold(themes, labels));
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(r.themes[t].accuracy == 1.0);
    CHECK(r.themes[t].f1 == 1.0);
  }
  const auto& c = r.themes[2];
  CHECK(c.precision_undefined);
  CHECK(c.recall_undefined);
  CHECK(c.precision == 0.0);
  CHECK(c.recall == 0.0);
  CHECK(c.accuracy == 1.0);
}

TEST_CASE("confusion counts match brute force on random instances") {
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + uniform_index(rng, 50), T = 6;
    LabelSets p(n), g(n);
    for (std::size_t d = 0; d < n; ++d) {
      for (std::size_t t = 0; t < T; ++t) {
        if (uniform01(rng) < 0.3) p[d].push_back(t);
        if (uniform01(rng) < 0.3) g[d].push_back(t);
      }
    }
    const auto c = confusion_counts(p, g, T);
    for (std::size_t t = 0; t < T; ++t) {
      Confusion ref;
      for (std::size_t d = 0; d < n; ++d) {
        const bool inp = std::count(p[d].begin(), p[d].end(), t) > 0;
        const bool ing = std::count(g[d].begin(), g[d].end(), t) > 0;
        (inp ? (ing ? ref.tp : ref.fp) : (ing ? ref.fn : ref.tn)) += 1;
      }
      CHECK(c[t] == ref);
      CHECK(c[t].total() == n);
    }
  }
}

TEST_CASE("id coverage is enforced") {
  const std::vector<std::string> themes{"A"};
  auto preds = make_preds(themes, {{0}, {}});
  auto gold = make_gold(themes, {{0}, {}, {}});
  CHECK_THROWS_AS(per_theme_metrics(preds, gold), DataError);
  CHECK_THROWS_AS(restrict_to_gold(preds, gold), DataError);
  gold.erase("d2");
  gold.erase("d1");
  const auto sub = restrict_to_gold(preds, gold);
  CHECK(sub.docs.size() == 1);
  gold["d0"] = {"Unknown"};
  CHECK_THROWS_AS(per_theme_metrics(sub, gold), DataError);
}

TEST_CASE("summaries use population standard deviation") {
  const std::vector<double> v{60, 70, 80};
  const auto ms = mean_std(v);
  CHECK(ms.mean == doctest::Approx(70.0));
  CHECK(ms.std == doctest::Approx(std::sqrt(200.0 / 3.0)));
  CHECK(ms.std == doctest::Approx(8.165).epsilon(1e-4));

  const auto s = summarize({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  REQUIRE(s.per_method.size() == 2);
  REQUIRE(s.per_theme.size() == 3);
  for (const auto& m : s.per_method) {
    CHECK(m.mean == 0.5);
    CHECK(m.std == 0.0);
  }
  CHECK_THROWS_AS(summarize({{0.1, 0.2}, {0.3}}), DataError);
}

TEST_CASE("summaries match a direct recomputation") {
  Rng rng(5);
  std::vector<std::vector<double>> acc(6, std::vector<double>(5));
  for (auto& row : acc) {
    for (double& x : row) x = uniform01(rng);
  }
  const auto s = summarize(acc);
  for (std::size_t m = 0; m < 5; ++m) {
    double sum = 0.0;
    for (std::size_t t = 0; t < 6; ++t) sum += acc[t][m];
    const double mean = sum / 6.0;
    double ss = 0.0;
    for (std::size_t t = 0; t < 6; ++t) ss += (acc[t][m] - mean) * (acc[t][m] - mean);
    CHECK(s.per_method[m].mean == mean);
    CHECK(s.per_method[m].std == std::sqrt(ss / 6.0));
  }
}

TEST_CASE("report rendering") {
  const std::vector<std::string> themes{"A", "B"};
  const std::vector<std::vector<std::size_t>> gold_labels{{0}, {1}, {}, {0, 1}};
  const auto gold = make_gold(themes, gold_labels);
  auto p1 = make_preds(themes, gold_labels);
  p1.engine = "corex";
  auto p2 = make_preds(themes, {{0}, {}, {}, {}});
  p2.engine = "bertopic";
  const std::vector<MetricsReport> reports{per_theme_metrics(p1, gold), per_theme_metrics(p2, gold)};
  const std::vector<ExampleDoc> ex{{"d3", "some text"}};
  const auto md = render_metrics_markdown(reports, {p1, p2}, gold, ex);
  CHECK(md.find("| Mean (STD) | 100.0 (0.0) | 62.5 (12.5) |") != std::string::npos);
  CHECK(md.find("- gold: A; B") != std::string::npos);
  CHECK(md.find("- bertopic: (no themes)") != std::string::npos);
  CHECK(md.find("population") != std::string::npos);
  const auto csv = render_metrics_csv(reports);
  CHECK(csv.rfind("theme,engine,tp,fp,fn,tn,precision,recall,f1,accuracy,flags\n", 0) == 0);
  CHECK(csv.find("\"B\",bertopic,0,0,2,2,0.000000,0.000000,0.000000,0.500000,precision_undefined") != std::string::npos);
  CHECK(percent(0.8134) == "81.3");
}
