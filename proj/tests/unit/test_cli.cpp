#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wstc/cli.hpp"
#include "wstc/embeddings.hpp"

using namespace wstc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string p(const fs::path& x) { return x.string(); }

/// A small synthetic corpus plus vectors, written once.
const fs::path& workdir() {
  static const fs::path dir = [] {
    const auto d = wstc::testing::scratch_dir("cli");
    const auto r = cli({"synth", "--out", p(d / "c.jsonl"), "--truth", p(d / "truth.json"), "--n-docs", "300",
                        "--embeddings-out", p(d / "e.bin"), "--rng-seed", "4"});
    REQUIRE(r.code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("label with the keyword engine") {
  const auto& d = workdir();
  const auto r = cli({"label", "--engine", "keyword", "--corpus", p(d / "c.jsonl"), "--out", p(d / "kw.jsonl"),
                      "--model-out", p(d / "kw.json")});
  CHECK(r.code == kExitOk);
  const auto text = wstc::testing::slurp(d / "kw.jsonl");
  CHECK(text.rfind("{\"meta\":{\"engine\":\"keyword\"", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 301);
  CHECK(fs::exists(d / "kw.json"));
}

TEST_CASE("usage errors exit with 1") {
  const auto& d = workdir();
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"label", "--engine", "keyword"}).code == kExitUsage);
  const auto x = cli({"label", "--engine", "xclass", "--corpus", p(d / "c.jsonl"), "--out", p(d / "x.jsonl")});
  CHECK(x.code == kExitUsage);
  CHECK(x.err.find("--embeddings") != std::string::npos);
  CHECK(cli({"label", "--engine", "nope", "--corpus", p(d / "c.jsonl"), "--out", p(d / "x.jsonl")}).code == kExitUsage);
  CHECK(cli({"label", "--engine", "corex", "--corpus", p(d / "c.jsonl"), "--out", p(d / "x.jsonl"), "--params",
             "colour=blue"})
            .code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("data errors exit with 2") {
  const auto& d = workdir();
  CHECK(cli({"label", "--engine", "keyword", "--corpus", p(d / "missing.jsonl"), "--out", p(d / "x.jsonl")}).code ==
        kExitData);
  wstc::testing::spit(d / "bad.bin", "WSTCEMB2");
  const auto e = cli({"embcheck", "--file", p(d / "bad.bin")});
  CHECK(e.code == kExitData);
  CHECK(e.err.find("bad magic") != std::string::npos);
  wstc::testing::spit(d / "dup.jsonl", "{\"id\":\"a\",\"text\":\"x y\"}\n{\"id\":\"a\",\"text\":\"y z\"}\n");
  CHECK(cli({"label", "--engine", "keyword", "--corpus", p(d / "dup.jsonl"), "--out", p(d / "x.jsonl")}).code ==
        kExitData);
}

TEST_CASE("engine failures exit with 3") {
  const auto& d = workdir();
  const auto r = cli({"label", "--engine", "westclass", "--corpus", p(d / "c.jsonl"), "--out", p(d / "w.jsonl"),
                      "--params", "conf_threshold=1.5", "dim=10", "per_class=50"});
  CHECK(r.code == kExitEngine);
  CHECK(r.err.find("self-training starved") != std::string::npos);
}

TEST_CASE("evaluate, explain, embcheck and agree") {
  const auto& d = workdir();
  REQUIRE(cli({"label", "--engine", "keyword", "--corpus", p(d / "c.jsonl"), "--out", p(d / "kw.jsonl"),
               "--model-out", p(d / "kw.json")})
              .code == 0);
  REQUIRE(cli({"label", "--engine", "bertopic", "--corpus", p(d / "c.jsonl"), "--embeddings", p(d / "e.bin"),
               "--out", p(d / "bt.jsonl"), "--model-out", p(d / "bt.json")})
              .code == 0);

  const auto ev = cli({"evaluate", "--preds", p(d / "kw.jsonl"), p(d / "bt.jsonl"), "--gold", p(d / "c.jsonl"),
                       "--out", p(d / "report.md"), "--csv", p(d / "report.csv"), "--examples", "2"});
  CHECK(ev.code == 0);
  const auto md = wstc::testing::slurp(d / "report.md");
  CHECK(md.find("Mean (STD)") != std::string::npos);
  CHECK(md.find("## Labelled examples") != std::string::npos);

  const auto ex = cli({"explain", "--model", p(d / "kw.json"), p(d / "bt.json"), "--n", "15", "--out",
                       p(d / "kw.md"), "--csv", p(d / "kw.csv")});
  CHECK(ex.code == 0);
  const auto table = wstc::testing::slurp(d / "kw.md");
  for (const auto& name : default_theme_config().names()) CHECK(table.find("| " + name + " |") != std::string::npos);
  CHECK(cli({"explain", "--model", p(d / "kw.json"), "--n", "0", "--out", p(d / "kw0.md")}).code == kExitUsage);

  const auto ok = cli({"embcheck", "--file", p(d / "e.bin"), "--corpus", p(d / "c.jsonl")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("300 documents") != std::string::npos);
  wstc::testing::spit(d / "extra.jsonl", wstc::testing::slurp(d / "c.jsonl") + "{\"id\":\"c7\",\"text\":\"a b\"}\n");
  const auto miss = cli({"embcheck", "--file", p(d / "e.bin"), "--corpus", p(d / "extra.jsonl")});
  CHECK(miss.code == kExitData);
  CHECK(miss.err.find("\"c7\"") != std::string::npos);

  wstc::testing::spit(d / "ann.csv",
                      "doc_id,annotator_id,theme,present\n"
                      "d1,a,Pain,1\nd1,b,Pain,1\nd1,c,Pain,0\nd2,a,Pain,0\nd2,b,Pain,0\nd2,c,Pain,0\n");
  CHECK(cli({"agree", "--annotations", p(d / "ann.csv"), "--out", p(d / "agree.md")}).code == 0);
  CHECK(wstc::testing::slurp(d / "agree.md").find("Pain") != std::string::npos);
}

TEST_CASE("repeated runs write identical files") {
  const auto& d = workdir();
  for (const std::string engine : {"corex", "glda"}) {
    const std::vector<std::string> base{"label", "--engine", engine, "--corpus", p(d / "c.jsonl"), "--rng-seed", "3",
                                        "--params", engine == "glda" ? "iterations=30" : "max_iter=30"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", p(d / "r1.jsonl")});
    b.insert(b.end(), {"--out", p(d / "r2.jsonl")});
    REQUIRE(cli(a).code == 0);
    REQUIRE(cli(b).code == 0);
    CHECK(wstc::testing::slurp(d / "r1.jsonl") == wstc::testing::slurp(d / "r2.jsonl"));
  }
}
