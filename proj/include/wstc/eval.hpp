#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wstc/corpus.hpp"
#include "wstc/labeling.hpp"

namespace wstc {

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const Confusion&) const = default;
};

struct ThemeMetrics {
  std::string theme;
  Confusion counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  bool precision_undefined = false;  // TP + FP = 0, reported as 0
  bool recall_undefined = false;     // TP + FN = 0, reported as 0
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct MetricsReport {
  std::string engine;
  std::size_t num_docs = 0;
  std::vector<ThemeMetrics> themes;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  MeanStd accuracy;  // across themes
};

/// Label sets are ascending theme indices.
using LabelSets = std::vector<std::vector<std::size_t>>;

/// Per-theme binary confusion counts over aligned documents.
std::vector<Confusion> confusion_counts(const LabelSets& predicted, const LabelSets& gold, std::size_t num_themes);

ThemeMetrics metrics_from_counts(const std::string& theme, const Confusion& c);

MeanStd mean_std(std::span<const double> values);

/// Doc id -> gold theme names.
using GoldMap = std::map<std::string, std::vector<std::string>>;

/// Gold labels of the comments that carry a gold field.
GoldMap gold_from_corpus(std::span<const RawComment> comments);

/// Evaluates `preds` against `gold`; both must cover exactly the same doc ids.
MetricsReport per_theme_metrics(const PredictionSet& preds, const GoldMap& gold);

/// Keeps only the predictions whose ids are in `gold`; throws DataError if a gold id has no
/// prediction.
PredictionSet restrict_to_gold(const PredictionSet& preds, const GoldMap& gold);

struct Summary {
  std::vector<MeanStd> per_method;  // over themes (columns of the matrix)
  std::vector<MeanStd> per_theme;   // over methods (rows of the matrix)
};

/// accuracies[theme][method].
Summary summarize(const std::vector<std::vector<double>>& accuracies);

struct ExampleDoc {
  std::string id;
  std::string text;
};

/// Markdown comparison of several engines: per-engine metric tables, the accuracy matrix
/// with its "Mean (STD)" row, per-theme means across engines, and optional labelled examples.
std::string render_metrics_markdown(const std::vector<MetricsReport>& reports,
                                    const std::vector<PredictionSet>& preds, const GoldMap& gold,
                                    std::span<const ExampleDoc> examples);

/// theme,engine,tp,fp,fn,tn,precision,recall,f1,accuracy,flags
std::string render_metrics_csv(const std::vector<MetricsReport>& reports);

/// Percentage with `decimals` places, e.g. percent(0.8134) == "81.3".
std::string percent(double fraction, int decimals = 1);

}  // namespace wstc
