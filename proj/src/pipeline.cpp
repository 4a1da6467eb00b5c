#include "wstc/pipeline.hpp"

#include <charconv>
#include <sstream>

#include "wstc/engine_bertopic.hpp"
#include "wstc/engine_corex.hpp"
#include "wstc/engine_glda.hpp"
#include "wstc/engine_keyword.hpp"
#include "wstc/engine_westclass.hpp"
#include "wstc/engine_xclass.hpp"
#include "wstc/error.hpp"
#include "wstc/text.hpp"
#include "wstc/util.hpp"

namespace wstc {

using ojson = nlohmann::ordered_json;

EngineKind parse_engine(const std::string& name) {
  if (name == "keyword") return EngineKind::keyword;
  if (name == "corex") return EngineKind::corex;
  if (name == "glda") return EngineKind::glda;
  if (name == "westclass") return EngineKind::westclass;
  if (name == "xclass") return EngineKind::xclass;
  if (name == "bertopic") return EngineKind::bertopic;
  throw UsageError("unknown engine \"" + name + "\" (keyword|corex|glda|westclass|xclass|bertopic)");
}

std::string engine_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::keyword: return "keyword";
    case EngineKind::corex: return "corex";
    case EngineKind::glda: return "glda";
    case EngineKind::westclass: return "westclass";
    case EngineKind::xclass: return "xclass";
    case EngineKind::bertopic: return "bertopic";
  }
  return "keyword";
}

PolicyKind default_policy(EngineKind kind) {
  switch (kind) {
    case EngineKind::glda: return PolicyKind::simplex;
    case EngineKind::bertopic: return PolicyKind::cluster;
    default: return PolicyKind::probability;
  }
}

bool needs_embeddings(EngineKind kind) { return kind == EngineKind::xclass || kind == EngineKind::bertopic; }

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter \"" + item + "\" is not key=value");
    const std::string key = trim(item.substr(0, eq));
    if (!out.emplace(key, trim(item.substr(eq + 1))).second) throw UsageError("parameter \"" + key + "\" given twice");
  }
  return out;
}

std::string corpus_hash(std::span<const RawComment> comments) {
  std::ostringstream out;
  write_corpus_jsonl(out, comments);
  return fnv1a_hex(out.str());
}

namespace {

// Typed access to engine parameters; anything left unread at the end is rejected.
class ParamReader {
 public:
  explicit ParamReader(std::map<std::string, std::string> p) : params_(std::move(p)) {}

  void read(const std::string& key, double& v) {
    if (auto s = take(key)) {
      std::size_t pos = 0;
      try {
        v = std::stod(*s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != s->size()) throw UsageError("parameter " + key + " expects a number, got \"" + *s + "\"");
    }
    effective_[key] = v;
  }
  template <typename Int>
  void read_int(const std::string& key, Int& v) {
    if (auto s = take(key)) {
      Int parsed{};
      auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), parsed);
      if (ec != std::errc() || ptr != s->data() + s->size()) {
        throw UsageError("parameter " + key + " expects an integer, got \"" + *s + "\"");
      }
      v = parsed;
    }
    effective_[key] = v;
  }
  void read(const std::string& key, std::size_t& v) { read_int(key, v); }
  void read(const std::string& key, int& v) { read_int(key, v); }

  ojson finish() {
    if (!params_.empty()) {
      throw UsageError("unknown parameter \"" + params_.begin()->first + "\" for this engine");
    }
    return effective_;
  }

 private:
  std::optional<std::string> take(const std::string& key) {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    std::string v = it->second;
    params_.erase(it);
    return v;
  }

  std::map<std::string, std::string> params_;
  ojson effective_ = ojson::object();
};

std::vector<std::string> kept_ids(const PreparedCorpus& pc) {
  std::vector<std::string> ids;
  for (const auto& d : pc.docs) ids.push_back(d.id);
  return ids;
}

}  // namespace

LabelResult run_label(const LabelRequest& req) {
  if (req.themes.size() == 0) throw UsageError("theme configuration is empty");
  if (req.min_df == 0) throw UsageError("min_df must be >= 1");
  if (needs_embeddings(req.engine) && !req.embeddings) {
    throw UsageError("engine " + engine_name(req.engine) + " requires --embeddings");
  }
  if (req.comments.empty()) throw DataError("corpus is empty");

  LabelResult result;
  PreprocessOptions options = PreprocessOptions::defaults();
  if (req.spell_correct) {
    options.spell_correct = true;
    options.corrector = make_spell_corrector(req.comments, options, req.lexicon);
  }
  const auto keys = seed_keys(req.themes, options);
  PreparedCorpus pc = prepare_corpus(req.comments, options, req.min_df, keys);
  for (const auto& id : pc.removed_ids) {
    result.warnings.push_back("document \"" + id + "\" removed by preprocessing (one or fewer tokens)");
  }
  if (req.embeddings) {
    std::vector<std::string> all_ids;
    for (const auto& c : req.comments) all_ids.push_back(c.id);
    std::vector<std::string> seeds;
    for (const auto& t : req.themes.themes()) seeds.insert(seeds.end(), t.seeds.begin(), t.seeds.end());
    validate_coverage(*req.embeddings, all_ids, seeds);
  }

  const bool unigrams_only = req.engine == EngineKind::westclass;
  const ResolvedSeeds seeds = resolve_seeds(req.themes, pc.vocab, options, unigrams_only);
  result.warnings.insert(result.warnings.end(), seeds.warnings.begin(), seeds.warnings.end());

  DecisionPolicy policy;
  policy.kind = default_policy(req.engine);
  policy.num_topics = req.themes.size();
  if (req.threshold) {
    if (!(*req.threshold >= 0.0 && *req.threshold <= 1.0)) throw UsageError("threshold must lie in [0, 1]");
    if (policy.kind == PolicyKind::probability) policy.threshold = *req.threshold;
    else if (policy.kind == PolicyKind::simplex) policy.floor = *req.threshold;
    else result.warnings.push_back("threshold ignored by the cluster policy");
  }

  ParamReader reader(req.params);
  std::vector<ScoreVector> scores;
  switch (req.engine) {
    case EngineKind::keyword: {
      auto fit = fit_keyword(pc, req.themes, seeds);
      scores = std::move(fit.scores);
      result.model = std::move(fit.model);
      break;
    }
    case EngineKind::corex: {
      CorexParams p;
      p.rng_seed = req.rng_seed;
      reader.read("k_extra", p.k_extra);
      reader.read("anchor_strength", p.anchor_strength);
      reader.read("max_iter", p.max_iter);
      reader.read("tol", p.tol);
      reader.read("smoothing", p.smoothing);
      const CorexModel m = fit_corex(pc.matrix, seeds, p);
      if (m.degenerate) result.warnings.push_back("corex: fewer than two documents; degenerate model with TC = 0");
      const auto present = binarize(pc.matrix);
      for (const auto& row : present) scores.push_back(corex_doc_scores(m, row));
      result.model = corex_term_model(m, req.themes, pc.vocab, seeds, p);
      break;
    }
    case EngineKind::glda: {
      GldaParams p;
      p.rng_seed = req.rng_seed;
      reader.read("k_extra", p.k_extra);
      reader.read("alpha", p.dirichlet_alpha);
      reader.read("beta", p.beta);
      reader.read("boost", p.boost);
      reader.read("iterations", p.iterations);
      reader.read("averaging_fraction", p.averaging_fraction);
      const GldaModel m = fit_glda(pc.terms, pc.vocab.size(), &seeds, req.themes.size(), p);
      for (std::size_t d = 0; d < pc.docs.size(); ++d) scores.push_back(glda_doc_scores(m, d));
      policy.num_topics = m.num_topics;
      result.model = glda_term_model(m, req.themes, pc.vocab, seeds);
      break;
    }
    case EngineKind::westclass: {
      WestclassParams p;
      p.rng_seed = req.rng_seed;
      reader.read("dim", p.dim);
      reader.read("gamma", p.gamma);
      reader.read("top_m", p.top_m);
      reader.read("temperature", p.temperature);
      reader.read("per_class", p.per_class);
      reader.read("length_mean", p.length_mean);
      reader.read("conf_threshold", p.conf_threshold);
      reader.read("delta", p.delta);
      reader.read("max_rounds", p.max_rounds);
      reader.read("l2", p.classifier.l2);
      auto fit = fit_westclass(pc, req.themes, seeds, p);
      scores = std::move(fit.scores);
      result.model = std::move(fit.model);
      break;
    }
    case EngineKind::xclass: {
      XclassParams p;
      p.rng_seed = req.rng_seed;
      reader.read("select_fraction", p.select_fraction);
      reader.read("kmeans_iters", p.kmeans_iters);
      reader.read("l2", p.classifier.l2);
      const auto ids = kept_ids(pc);
      auto fit = fit_xclass(*req.embeddings, ids, pc.matrix, req.themes, pc.vocab, seeds, p);
      scores = std::move(fit.scores);
      result.model = std::move(fit.model);
      break;
    }
    case EngineKind::bertopic: {
      BertopicParams p;
      p.rng_seed = req.rng_seed;
      reader.read("k_extra", p.k_extra);
      reader.read("kmeans_iters", p.kmeans_iters);
      const auto ids = kept_ids(pc);
      auto fit = guided_cluster(*req.embeddings, ids, req.themes, p);
      attach_bertopic_model(fit, req.themes, pc.terms, pc.vocab, seeds, p);
      for (const auto& row : fit.model->topic_words(1)) {
        if (!row.warning.empty()) result.warnings.push_back("bertopic: theme \"" + row.theme + "\": " + row.warning);
      }
      scores = std::move(fit.scores);
      result.model = std::move(fit.model);
      break;
    }
  }
  const ojson effective = reader.finish();

  PredictionSet& preds = result.predictions;
  preds.engine = engine_name(req.engine);
  preds.themes = req.themes.names();
  preds.policy = policy;
  preds.meta.rng_seed = req.rng_seed;
  preds.meta.params = effective;
  preds.meta.params["min_df"] = req.min_df;
  preds.meta.params["spell_correct"] = req.spell_correct;
  preds.meta.params["stopwords"] = std::string(kStopwordListVersion);
  preds.meta.corpus_hash = corpus_hash(req.comments);
  ojson cfg;
  cfg["engine"] = preds.engine;
  cfg["themes"] = serialize_theme_config(req.themes);
  cfg["params"] = preds.meta.params;
  cfg["policy"] = policy.to_json();
  cfg["rng_seed"] = req.rng_seed;
  preds.meta.config_hash = fnv1a_hex(cfg.dump());

  std::map<std::string, std::size_t> kept;
  for (std::size_t d = 0; d < pc.docs.size(); ++d) kept.emplace(pc.docs[d].id, d);
  for (const auto& c : pc.comments) {
    DocPrediction dp;
    dp.id = c.id;
    if (auto it = kept.find(c.id); it != kept.end()) {
      dp.scores = scores[it->second];
      dp.labels = decide_labels(dp.scores, policy);
    } else {
      dp.scores.assign(preds.themes.size(), 0.0);
      dp.removed = true;
    }
    preds.docs.push_back(std::move(dp));
  }
  return result;
}

}  // namespace wstc
