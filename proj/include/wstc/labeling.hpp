#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wstc {

/// Per-theme scores in [0, 1], aligned with the theme config order.
using ScoreVector = std::vector<double>;

enum class PolicyKind { probability, simplex, cluster };

std::string_view policy_name(PolicyKind kind);
PolicyKind parse_policy(std::string_view name);

/// Score -> label rule.
///  probability: label t iff score(t) >= threshold.
///  simplex:     label t iff score(t) >= max(1.2 / num_topics, floor).
///  cluster:     the single nonzero theme, if any.
struct DecisionPolicy {
  PolicyKind kind = PolicyKind::probability;
  double threshold = 0.5;
  double floor = 0.15;
  std::size_t num_topics = 1;

  double simplex_cutoff() const;
  nlohmann::ordered_json to_json() const;
};

/// Indices of the decided themes, ascending.
std::vector<std::size_t> decide_labels(std::span<const double> scores, const DecisionPolicy& policy);

struct DocPrediction {
  std::string id;
  ScoreVector scores;
  std::vector<std::size_t> labels;
  bool removed = false;  // dropped by preprocessing; scores are all zero
};

struct RunMetadata {
  std::uint64_t rng_seed = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::string config_hash;
  std::string corpus_hash;
};

struct PredictionSet {
  std::string engine;
  std::vector<std::string> themes;
  DecisionPolicy policy;
  RunMetadata meta;
  std::vector<DocPrediction> docs;

  /// Label names of one document.
  std::vector<std::string> label_names(const DocPrediction& doc) const;
};

/// First line is {"meta":{...}}, then one
/// {"id":..,"engine":..,"scores":{theme:score,..},"labels":[..]} object per document.
void write_predictions_jsonl(std::ostream& out, const PredictionSet& preds);
std::string predictions_to_string(const PredictionSet& preds);
PredictionSet read_predictions_jsonl(std::istream& in, const std::string& source = "<predictions>");

}  // namespace wstc
