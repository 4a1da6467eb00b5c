#include "wstc/labeling.hpp"

#include <algorithm>
#include <sstream>

#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

using ojson = nlohmann::ordered_json;

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::probability: return "probability";
    case PolicyKind::simplex: return "simplex";
    case PolicyKind::cluster: return "cluster";
  }
  return "probability";
}

PolicyKind parse_policy(std::string_view name) {
  if (name == "probability") return PolicyKind::probability;
  if (name == "simplex") return PolicyKind::simplex;
  if (name == "cluster") return PolicyKind::cluster;
  throw DataError("unknown decision policy \"" + std::string(name) + "\"");
}

double DecisionPolicy::simplex_cutoff() const {
  return std::max(1.2 / static_cast<double>(std::max<std::size_t>(num_topics, 1)), floor);
}

ojson DecisionPolicy::to_json() const {
  ojson j;
  j["kind"] = policy_name(kind);
  switch (kind) {
    case PolicyKind::probability:
      j["threshold"] = threshold;
      break;
    case PolicyKind::simplex:
      j["num_topics"] = num_topics;
      j["floor"] = floor;
      j["cutoff"] = simplex_cutoff();
      break;
    case PolicyKind::cluster:
      break;
  }
  return j;
}

std::vector<std::size_t> decide_labels(std::span<const double> scores, const DecisionPolicy& policy) {
  std::vector<std::size_t> out;
  switch (policy.kind) {
    case PolicyKind::probability:
      for (std::size_t t = 0; t < scores.size(); ++t) {
        if (scores[t] >= policy.threshold) out.push_back(t);
      }
      break;
    case PolicyKind::simplex: {
      const double cutoff = policy.simplex_cutoff();
      for (std::size_t t = 0; t < scores.size(); ++t) {
        if (scores[t] >= cutoff) out.push_back(t);
      }
      break;
    }
    case PolicyKind::cluster:
      for (std::size_t t = 0; t < scores.size(); ++t) {
        if (scores[t] > 0.0) {
          out.push_back(t);
          break;
        }
      }
      break;
  }
  return out;
}

std::vector<std::string> PredictionSet::label_names(const DocPrediction& doc) const {
  std::vector<std::string> out;
  for (std::size_t t : doc.labels) out.push_back(themes[t]);
  return out;
}

void write_predictions_jsonl(std::ostream& out, const PredictionSet& preds) {
  ojson meta;
  meta["engine"] = preds.engine;
  meta["themes"] = preds.themes;
  meta["policy"] = preds.policy.to_json();
  meta["rng_seed"] = preds.meta.rng_seed;
  meta["params"] = preds.meta.params;
  meta["config_hash"] = preds.meta.config_hash;
  meta["corpus_hash"] = preds.meta.corpus_hash;
  ojson header;
  header["meta"] = std::move(meta);
  out << header.dump() << '\n';
  for (const auto& d : preds.docs) {
    ojson j;
    j["id"] = d.id;
    j["engine"] = preds.engine;
    ojson scores = ojson::object();
    for (std::size_t t = 0; t < preds.themes.size(); ++t) scores[preds.themes[t]] = d.scores[t];
    j["scores"] = std::move(scores);
    j["labels"] = preds.label_names(d);
    if (d.removed) j["removed"] = true;
    out << j.dump() << '\n';
  }
}

std::string predictions_to_string(const PredictionSet& preds) {
  std::ostringstream out;
  write_predictions_jsonl(out, preds);
  return out.str();
}

PredictionSet read_predictions_jsonl(std::istream& in, const std::string& source) {
  PredictionSet preds;
  std::string line;
  std::size_t lineno = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const ojson::parse_error& e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      preds.engine = m.value("engine", "");
      preds.themes = m.value("themes", std::vector<std::string>{});
      if (m.contains("policy")) {
        const auto& p = m["policy"];
        preds.policy.kind = parse_policy(p.value("kind", "probability"));
        preds.policy.threshold = p.value("threshold", 0.5);
        preds.policy.floor = p.value("floor", 0.15);
        preds.policy.num_topics = p.value("num_topics", std::size_t{1});
      }
      preds.meta.rng_seed = m.value("rng_seed", std::uint64_t{0});
      if (m.contains("params")) preds.meta.params = m["params"];
      preds.meta.config_hash = m.value("config_hash", "");
      preds.meta.corpus_hash = m.value("corpus_hash", "");
      have_meta = true;
      continue;
    }
    if (!have_meta) throw ParseError(source, lineno, "predictions file lacks a meta header line");
    if (!j.contains("id") || !j.contains("scores") || !j.contains("labels")) {
      throw ParseError(source, lineno, "prediction record needs id, scores and labels");
    }
    DocPrediction d;
    d.id = j["id"].get<std::string>();
    d.scores.assign(preds.themes.size(), 0.0);
    for (std::size_t t = 0; t < preds.themes.size(); ++t) {
      d.scores[t] = j["scores"].value(preds.themes[t], 0.0);
    }
    for (const auto& name : j["labels"]) {
      auto it = std::find(preds.themes.begin(), preds.themes.end(), name.get<std::string>());
      if (it == preds.themes.end()) {
        throw ParseError(source, lineno, "label \"" + name.get<std::string>() + "\" is not a configured theme");
      }
      d.labels.push_back(static_cast<std::size_t>(it - preds.themes.begin()));
    }
    std::sort(d.labels.begin(), d.labels.end());
    d.removed = j.value("removed", false);
    preds.docs.push_back(std::move(d));
  }
  if (!have_meta) throw DataError(source + ": empty predictions file");
  return preds;
}

}  // namespace wstc
