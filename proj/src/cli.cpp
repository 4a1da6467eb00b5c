#include "wstc/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "wstc/agreement.hpp"
#include "wstc/error.hpp"
#include "wstc/eval.hpp"
#include "wstc/explain.hpp"
#include "wstc/pipeline.hpp"
#include "wstc/synth.hpp"
#include "wstc/util.hpp"

namespace wstc {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
  if (!f) throw DataError("failed writing " + path);
}

ThemeConfig themes_or_default(const std::string& path) {
  return path.empty() ? default_theme_config() : load_theme_config(path);
}

std::unordered_set<std::string> load_lexicon(const std::string& path) {
  std::unordered_set<std::string> out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto w = trim(line);
    if (!w.empty() && w.front() != '#') out.insert(w);
  }
  return out;
}

struct LabelArgs {
  std::string engine, corpus, themes, embeddings, out, model_out, lexicon;
  std::uint64_t rng_seed = 0;
  std::optional<double> threshold;
  std::vector<std::string> params;
  std::size_t min_df = 2;
  bool spell_correct = false;
};

int cmd_label(const LabelArgs& a, std::ostream& out, std::ostream& err) {
  LabelRequest req;
  req.engine = parse_engine(a.engine);
  if (needs_embeddings(req.engine) && a.embeddings.empty()) {
    throw UsageError("engine " + a.engine + " requires --embeddings");
  }
  req.comments = load_corpus(a.corpus, corpus_format_for(a.corpus));
  req.themes = themes_or_default(a.themes);
  std::optional<EmbeddingTable> table;
  if (!a.embeddings.empty()) {
    table = load_embeddings(a.embeddings);
    req.embeddings = &*table;
  }
  req.rng_seed = a.rng_seed;
  req.threshold = a.threshold;
  req.params = parse_params(a.params);
  req.min_df = a.min_df;
  req.spell_correct = a.spell_correct;
  req.lexicon = load_lexicon(a.lexicon);

  const LabelResult res = run_label(req);
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  write_text(a.out, predictions_to_string(res.predictions));
  if (!a.model_out.empty()) write_text(a.model_out, res.model->to_json().dump() + "\n");
  std::size_t labelled = 0;
  for (const auto& d : res.predictions.docs) labelled += d.labels.empty() ? 0 : 1;
  out << res.predictions.engine << ": " << res.predictions.docs.size() << " documents, " << labelled
      << " with at least one theme -> " << a.out << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::vector<std::string> preds;
  std::string gold, out, csv;
  std::size_t examples = 0;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto comments = load_corpus(a.gold, corpus_format_for(a.gold));
  const GoldMap gold = gold_from_corpus(comments);
  if (gold.empty()) throw DataError(a.gold + ": no record carries a gold field");
  std::vector<PredictionSet> sets;
  std::vector<MetricsReport> reports;
  for (const auto& path : a.preds) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open predictions " + path);
    auto p = restrict_to_gold(read_predictions_jsonl(in, path), gold);
    if (!sets.empty() && p.themes != sets.front().themes) {
      throw DataError(path + ": themes differ from " + a.preds.front());
    }
    reports.push_back(per_theme_metrics(p, gold));
    sets.push_back(std::move(p));
  }
  std::vector<ExampleDoc> examples;
  for (const auto& c : comments) {
    if (examples.size() >= a.examples) break;
    if (c.gold) examples.push_back({c.id, c.text});
  }
  write_text(a.out, render_metrics_markdown(reports, sets, gold, examples));
  if (!a.csv.empty()) write_text(a.csv, render_metrics_csv(reports));
  for (const auto& r : reports) {
    out << r.engine << ": macro-F1 " << percent(r.macro_f1) << "%, mean accuracy " << percent(r.accuracy.mean)
        << "%\n";
  }
  return kExitOk;
}

struct SynthArgs {
  std::string out, truth, themes, embeddings_out, marginals;
  std::size_t n_docs = 2000;
  double no_theme_prob = 0.14, length_mean = 43.0, overlap_noise = 0.1;
  bool single_theme = false;
  std::uint64_t rng_seed = 0;
  std::size_t emb_dim = 32;
  double emb_noise = 1.0;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const ThemeConfig themes = themes_or_default(a.themes);
  SynthConfig cfg;
  cfg.n_docs = a.n_docs;
  cfg.no_theme_prob = a.no_theme_prob;
  cfg.length_mean = a.length_mean;
  cfg.overlap_noise = a.overlap_noise;
  cfg.single_theme = a.single_theme;
  cfg.rng_seed = a.rng_seed;
  if (!a.marginals.empty()) {
    cfg.theme_marginals.clear();
    for (const auto& s : split(a.marginals, ',')) {
      try {
        cfg.theme_marginals.push_back(std::stod(s));
      } catch (const std::exception&) {
        throw UsageError("--marginals expects comma-separated numbers");
      }
    }
  } else if (themes.size() != cfg.theme_marginals.size()) {
    cfg.theme_marginals.assign(themes.size(), 0.25);
  }
  const SynthCorpus corpus = generate_corpus(themes, cfg);
  std::ostringstream jsonl;
  write_corpus_jsonl(jsonl, corpus.comments);
  write_text(a.out, jsonl.str());
  if (!a.truth.empty()) write_text(a.truth, truth_json(corpus));
  if (!a.embeddings_out.empty()) {
    save_embeddings(a.embeddings_out, synthetic_embeddings(corpus.comments, corpus, themes, a.emb_dim, a.emb_noise,
                                                           a.rng_seed));
  }
  out << "synth: " << corpus.comments.size() << " documents -> " << a.out << '\n';
  return kExitOk;
}

int cmd_embcheck(const std::string& file, const std::string& corpus, const std::string& themes_path,
                 std::ostream& out) {
  const EmbeddingTable table = load_embeddings(file);
  if (!corpus.empty()) {
    std::vector<std::string> ids;
    for (const auto& c : load_corpus(corpus, corpus_format_for(corpus))) ids.push_back(c.id);
    std::vector<std::string> seeds;
    const ThemeConfig themes = themes_or_default(themes_path);
    for (const auto& t : themes.themes()) seeds.insert(seeds.end(), t.seeds.begin(), t.seeds.end());
    validate_coverage(table, ids, seeds);
  }
  out << file << ": OK, dim " << table.dim() << ", " << table.num_documents() << " documents, " << table.num_seeds()
      << " seed terms\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seed-guided weakly supervised multi-label theme classification"};
  app.require_subcommand(1);

  LabelArgs la;
  auto* label = app.add_subcommand("label", "Fit an engine on a corpus and write predictions");
  label->add_option("--engine", la.engine, "keyword|corex|glda|westclass|xclass|bertopic")->required();
  label->add_option("--corpus", la.corpus, "Corpus file (.jsonl or .csv)")->required();
  label->add_option("--themes", la.themes, "Theme config (TSV or JSON); built-in default when omitted");
  label->add_option("--embeddings", la.embeddings, "WSTCEMB1 file (xclass, bertopic)");
  label->add_option("--rng-seed", la.rng_seed, "Random seed");
  label->add_option("--threshold", la.threshold, "Probability threshold (or simplex floor)");
  label->add_option("--params", la.params, "Engine parameters as key=value")->expected(0, -1);
  label->add_option("--out", la.out, "Predictions JSONL")->required();
  label->add_option("--model-out", la.model_out, "Fitted model JSON (input of explain)");
  label->add_option("--min-df", la.min_df, "Minimum document frequency");
  label->add_flag("--spell-correct", la.spell_correct, "Enable corpus-level spelling correction");
  label->add_option("--lexicon", la.lexicon, "Known words for spelling correction, one per line");

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Compare prediction files against gold labels");
  evaluate->add_option("--preds", ea.preds, "Prediction files")->required()->expected(1, -1);
  evaluate->add_option("--gold", ea.gold, "Corpus file whose records carry gold labels")->required();
  evaluate->add_option("--out", ea.out, "Markdown report")->required();
  evaluate->add_option("--csv", ea.csv, "CSV metrics");
  evaluate->add_option("--examples", ea.examples, "Number of labelled examples to include");

  std::string ann_path, agree_out, tie_rule = "error";
  auto* agree = app.add_subcommand("agree", "Inter-annotator agreement report");
  agree->add_option("--annotations", ann_path, "CSV doc_id,annotator_id,theme,present")->required();
  agree->add_option("--out", agree_out, "Markdown report")->required();
  agree->add_option("--tie-rule", tie_rule, "Majority-vote ties: error|absent|present");

  std::vector<std::string> models;
  std::string explain_out, explain_csv;
  std::size_t n_terms = 15;
  auto* explain = app.add_subcommand("explain", "Top keywords per theme of fitted models");
  explain->add_option("--model", models, "Model files written by label --model-out")->required()->expected(1, -1);
  explain->add_option("--n", n_terms, "Keywords per theme");
  explain->add_option("--out", explain_out, "Markdown table")->required();
  explain->add_option("--csv", explain_csv, "CSV table");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate a planted-theme synthetic corpus");
  synth->add_option("--out", sa.out, "Corpus JSONL")->required();
  synth->add_option("--truth", sa.truth, "Sidecar JSON with the true word-theme map");
  synth->add_option("--themes", sa.themes, "Theme config; built-in default when omitted");
  synth->add_option("--n-docs", sa.n_docs, "Number of documents");
  synth->add_option("--marginals", sa.marginals, "Comma-separated per-theme probabilities");
  synth->add_option("--no-theme-prob", sa.no_theme_prob, "Probability of a document without themes");
  synth->add_option("--length-mean", sa.length_mean, "Mean words per document");
  synth->add_option("--overlap-noise", sa.overlap_noise, "Share of background words");
  synth->add_flag("--single-theme", sa.single_theme, "One theme per non-empty document");
  synth->add_option("--rng-seed", sa.rng_seed, "Random seed");
  synth->add_option("--embeddings-out", sa.embeddings_out, "Also write synthetic WSTCEMB1 vectors");
  synth->add_option("--emb-dim", sa.emb_dim, "Dimension of the synthetic vectors");
  synth->add_option("--emb-noise", sa.emb_noise, "Per-word noise norm of the synthetic vectors");

  std::string emb_file, emb_corpus, emb_themes;
  auto* embcheck = app.add_subcommand("embcheck", "Validate a WSTCEMB1 file");
  embcheck->add_option("--file", emb_file, "Embedding file")->required();
  embcheck->add_option("--corpus", emb_corpus, "Also require a vector for every document of this corpus");
  embcheck->add_option("--themes", emb_themes, "Theme config whose seeds must be present (with --corpus)");

  std::vector<std::string> argv_store{"wstc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*label) return cmd_label(la, out, err);
    if (*evaluate) return cmd_evaluate(ea, out);
    if (*agree) {
      const auto rule = parse_tie_rule(tie_rule);
      const auto ann = load_annotations(ann_path);
      write_text(agree_out, render_agreement_markdown(ann, rule));
      out << "agree: " << ann.docs().size() << " documents, " << ann.annotators().size() << " annotators -> "
          << agree_out << '\n';
      return kExitOk;
    }
    if (*explain) {
      std::vector<EngineKeywords> tables;
      for (const auto& m : models) tables.push_back(extract_keywords(*load_model(m), n_terms));
      write_text(explain_out, render_keywords_markdown(tables, n_terms));
      if (!explain_csv.empty()) write_text(explain_csv, render_keywords_csv(tables));
      out << "explain: " << tables.size() << " model(s) -> " << explain_out << '\n';
      return kExitOk;
    }
    if (*synth) return cmd_synth(sa, out);
    if (*embcheck) return cmd_embcheck(emb_file, emb_corpus, emb_themes, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const EngineError& e) {
    err << "engine error: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitUsage;
}

}  // namespace wstc
