#include "wstc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "wstc/error.hpp"

namespace wstc {

std::vector<Confusion> confusion_counts(const LabelSets& predicted, const LabelSets& gold, std::size_t num_themes) {
  if (predicted.size() != gold.size()) throw DataError("prediction and gold document counts differ");
  std::vector<Confusion> out(num_themes);
  std::vector<char> p(num_themes), g(num_themes);
  for (std::size_t d = 0; d < gold.size(); ++d) {
    std::fill(p.begin(), p.end(), 0);
    std::fill(g.begin(), g.end(), 0);
    for (std::size_t t : predicted[d]) p.at(t) = 1;
    for (std::size_t t : gold[d]) g.at(t) = 1;
    for (std::size_t t = 0; t < num_themes; ++t) {
      auto& c = out[t];
      if (p[t] && g[t]) ++c.tp;
      else if (p[t]) ++c.fp;
      else if (g[t]) ++c.fn;
      else ++c.tn;
    }
  }
  return out;
}

ThemeMetrics metrics_from_counts(const std::string& theme, const Confusion& c) {
  ThemeMetrics m;
  m.theme = theme;
  m.counts = c;
  const double tp = static_cast<double>(c.tp);
  if (c.tp + c.fp == 0) m.precision_undefined = true;
  else m.precision = tp / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn == 0) m.recall_undefined = true;
  else m.recall = tp / static_cast<double>(c.tp + c.fn);
  m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.accuracy = c.total() ? static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total()) : 0.0;
  return m;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd r;
  if (values.empty()) return r;
  double s = 0.0;
  for (double v : values) s += v;
  r.mean = s / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(values.size()));
  return r;
}

GoldMap gold_from_corpus(std::span<const RawComment> comments) {
  GoldMap out;
  for (const auto& c : comments) {
    if (c.gold) out[c.id] = *c.gold;
  }
  return out;
}

namespace {

std::vector<std::size_t> theme_indices(const std::vector<std::string>& names, const std::vector<std::string>& themes,
                                       const std::string& id) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto it = std::find(themes.begin(), themes.end(), n);
    if (it == themes.end()) throw DataError("gold label \"" + n + "\" of \"" + id + "\" is not a configured theme");
    out.push_back(static_cast<std::size_t>(it - themes.begin()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string fmt(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string percent(double fraction, int decimals) { return fmt(100.0 * fraction, decimals); }

MetricsReport per_theme_metrics(const PredictionSet& preds, const GoldMap& gold) {
  if (preds.docs.size() != gold.size()) {
    throw DataError("predictions cover " + std::to_string(preds.docs.size()) + " documents but gold covers " +
                    std::to_string(gold.size()));
  }
  LabelSets p, g;
  for (const auto& d : preds.docs) {
    auto it = gold.find(d.id);
    if (it == gold.end()) throw DataError("document \"" + d.id + "\" has no gold labels");
    p.push_back(d.labels);
    g.push_back(theme_indices(it->second, preds.themes, d.id));
  }
  const auto counts = confusion_counts(p, g, preds.themes.size());
  MetricsReport r;
  r.engine = preds.engine;
  r.num_docs = preds.docs.size();
  std::vector<double> acc;
  for (std::size_t t = 0; t < preds.themes.size(); ++t) {
    r.themes.push_back(metrics_from_counts(preds.themes[t], counts[t]));
    const auto& m = r.themes.back();
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    acc.push_back(m.accuracy);
  }
  if (!r.themes.empty()) {
    const double k = static_cast<double>(r.themes.size());
    r.macro_precision /= k;
    r.macro_recall /= k;
    r.macro_f1 /= k;
  }
  r.accuracy = mean_std(acc);
  return r;
}

PredictionSet restrict_to_gold(const PredictionSet& preds, const GoldMap& gold) {
  PredictionSet out = preds;
  out.docs.clear();
  std::set<std::string> seen;
  for (const auto& d : preds.docs) {
    if (gold.count(d.id)) {
      out.docs.push_back(d);
      seen.insert(d.id);
    }
  }
  for (const auto& [id, labels] : gold) {
    if (!seen.count(id)) throw DataError("gold document \"" + id + "\" is missing from the " + preds.engine + " predictions");
  }
  return out;
}

Summary summarize(const std::vector<std::vector<double>>& accuracies) {
  Summary s;
  if (accuracies.empty()) return s;
  const std::size_t methods = accuracies.front().size();
  for (const auto& row : accuracies) {
    if (row.size() != methods) throw DataError("summarize: accuracy matrix is ragged");
    s.per_theme.push_back(mean_std(row));
  }
  for (std::size_t m = 0; m < methods; ++m) {
    std::vector<double> col;
    for (const auto& row : accuracies) col.push_back(row[m]);
    s.per_method.push_back(mean_std(col));
  }
  return s;
}

std::string render_metrics_markdown(const std::vector<MetricsReport>& reports,
                                    const std::vector<PredictionSet>& preds, const GoldMap& gold,
                                    std::span<const ExampleDoc> examples) {
  std::ostringstream out;
  out << "# Evaluation report\n\n";
  if (reports.empty()) return out.str();
  const auto& themes = reports.front().themes;
  out << "Documents evaluated: " << reports.front().num_docs << "\n\n";

  for (std::size_t e = 0; e < reports.size(); ++e) {
    const auto& r = reports[e];
    out << "## " << r.engine << "\n\n";
    if (e < preds.size()) out << "Decision policy: `" << preds[e].policy.to_json().dump() << "`\n\n";
    out << "| Theme | Precision | Recall | F1 | Accuracy | TP | FP | FN | TN |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& m : r.themes) {
      out << "| " << m.theme << " | " << fmt(m.precision) << (m.precision_undefined ? "*" : "") << " | "
          << fmt(m.recall) << (m.recall_undefined ? "*" : "") << " | " << fmt(m.f1) << " | " << fmt(m.accuracy)
          << " | " << m.counts.tp << " | " << m.counts.fp << " | " << m.counts.fn << " | " << m.counts.tn << " |\n";
    }
    out << "| **Macro** | " << fmt(r.macro_precision) << " | " << fmt(r.macro_recall) << " | " << fmt(r.macro_f1)
        << " | " << fmt(r.accuracy.mean) << " | | | | |\n\n";
  }

  std::vector<std::vector<double>> matrix(themes.size(), std::vector<double>(reports.size()));
  for (std::size_t t = 0; t < themes.size(); ++t) {
    for (std::size_t e = 0; e < reports.size(); ++e) matrix[t][e] = reports[e].themes[t].accuracy;
  }
  const Summary s = summarize(matrix);

  out << "## Accuracy (%) by theme and engine\n\n| Theme |";
  for (const auto& r : reports) out << " " << r.engine << " |";
  out << "\n|---|";
  for (std::size_t e = 0; e < reports.size(); ++e) out << "---|";
  out << "\n";
  for (std::size_t t = 0; t < themes.size(); ++t) {
    out << "| " << themes[t].theme << " |";
    for (std::size_t e = 0; e < reports.size(); ++e) out << " " << percent(matrix[t][e]) << " |";
    out << "\n";
  }
  out << "| Mean (STD) |";
  for (const auto& m : s.per_method) out << " " << percent(m.mean) << " (" << percent(m.std) << ") |";
  out << "\n\n";

  out << "## Mean accuracy (%) across engines by theme\n\n| Theme | Mean (STD) |\n|---|---|\n";
  for (std::size_t t = 0; t < themes.size(); ++t) {
    out << "| " << themes[t].theme << " | " << percent(s.per_theme[t].mean) << " (" << percent(s.per_theme[t].std)
        << ") |\n";
  }
  out << "\n";

  if (!examples.empty()) {
    out << "## Labelled examples\n\n";
    for (const auto& ex : examples) {
      out << "### " << ex.id << "\n\n> " << ex.text << "\n\n";
      auto g = gold.find(ex.id);
      out << "- gold: ";
      if (g != gold.end() && !g->second.empty()) {
        for (std::size_t i = 0; i < g->second.size(); ++i) out << (i ? "; " : "") << g->second[i];
      } else {
        out << "(no themes)";
      }
      out << "\n";
      for (const auto& p : preds) {
        auto it = std::find_if(p.docs.begin(), p.docs.end(), [&](const DocPrediction& d) { return d.id == ex.id; });
        if (it == p.docs.end()) continue;
        const auto names = p.label_names(*it);
        out << "- " << p.engine << ": ";
        if (names.empty()) out << "(no themes)";
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "; " : "") << names[i];
        out << "\n";
      }
      out << "\n";
    }
  }

  out << "---\n\nAccuracy is per-theme binary accuracy over documents. Standard deviations are population "
         "values (divisor N). Values marked * had an undefined ratio (zero denominator) and are reported as 0.\n";
  return out.str();
}

std::string render_metrics_csv(const std::vector<MetricsReport>& reports) {
  std::ostringstream out;
  out << "theme,engine,tp,fp,fn,tn,precision,recall,f1,accuracy,flags\n";
  for (const auto& r : reports) {
    for (const auto& m : r.themes) {
      std::string flags;
      if (m.precision_undefined) flags += "precision_undefined";
      if (m.recall_undefined) flags += flags.empty() ? "recall_undefined" : ";recall_undefined";
      out << '"' << m.theme << "\"," << r.engine << ',' << m.counts.tp << ',' << m.counts.fp << ',' << m.counts.fn
          << ',' << m.counts.tn << ',' << fmt(m.precision, 6) << ',' << fmt(m.recall, 6) << ',' << fmt(m.f1, 6) << ','
          << fmt(m.accuracy, 6) << ',' << flags << '\n';
    }
  }
  return out.str();
}

}  // namespace wstc
