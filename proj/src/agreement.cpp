#include "wstc/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wstc/corpus.hpp"
#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

namespace {

std::size_t intern(std::vector<std::string>& axis, std::unordered_map<std::string, std::size_t>& index,
                   const std::string& key) {
  auto [it, fresh] = index.emplace(key, axis.size());
  if (fresh) axis.push_back(key);
  return it->second;
}

std::string fmt(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

AnnotationSet AnnotationSet::from_cells(std::span<const Cell> cells) {
  AnnotationSet s;
  std::unordered_map<std::string, std::size_t> di, ai, ti;
  for (const auto& c : cells) {
    intern(s.docs_, di, c.doc);
    intern(s.annotators_, ai, c.annotator);
    intern(s.themes_, ti, c.theme);
  }
  const std::size_t D = s.docs_.size(), A = s.annotators_.size(), T = s.themes_.size();
  std::vector<std::uint8_t> grid(D * A * T, 2);  // 2 = unset
  for (const auto& c : cells) {
    auto& v = grid[(di[c.doc] * A + ai[c.annotator]) * T + ti[c.theme]];
    if (v != 2) {
      throw DataError("duplicate annotation for doc \"" + c.doc + "\", annotator \"" + c.annotator + "\", theme \"" +
                      c.theme + "\"");
    }
    v = c.present ? 1 : 0;
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t t = 0; t < T; ++t) {
        if (grid[(d * A + a) * T + t] == 2) {
          throw DataError("annotation grid incomplete: doc \"" + s.docs_[d] + "\", annotator \"" + s.annotators_[a] +
                          "\", theme \"" + s.themes_[t] + "\" has no value");
        }
      }
    }
  }
  s.grid_ = std::move(grid);
  return s;
}

bool AnnotationSet::present(std::size_t doc, std::size_t annotator, std::size_t theme) const {
  return grid_[(doc * annotators_.size() + annotator) * themes_.size() + theme] == 1;
}

std::vector<std::uint8_t> AnnotationSet::column(std::size_t annotator, std::size_t theme) const {
  std::vector<std::uint8_t> out(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) out[d] = present(d, annotator, theme) ? 1 : 0;
  return out;
}

std::size_t AnnotationSet::theme_index(const std::string& name) const {
  auto it = std::find(themes_.begin(), themes_.end(), name);
  if (it == themes_.end()) throw DataError("theme \"" + name + "\" does not occur in the annotations");
  return static_cast<std::size_t>(it - themes_.begin());
}

AnnotationSet parse_annotations_csv(std::istream& in, const std::string& source) {
  std::vector<std::string> fields;
  std::size_t lineno = 0;
  if (!read_csv_record(in, fields, lineno, source)) throw DataError(source + ": empty annotation file");
  for (auto& f : fields) f = trim(f);
  const std::vector<std::string> expected{"doc_id", "annotator_id", "theme", "present"};
  if (fields != expected) throw ParseError(source, lineno, "header must be doc_id,annotator_id,theme,present");
  std::vector<AnnotationSet::Cell> cells;
  while (read_csv_record(in, fields, lineno, source)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != 4) throw ParseError(source, lineno, "expected 4 fields, got " + std::to_string(fields.size()));
    const std::string p = trim(fields[3]);
    if (p != "0" && p != "1") throw ParseError(source, lineno, "present must be 0 or 1");
    AnnotationSet::Cell c{trim(fields[0]), trim(fields[1]), trim(fields[2]), p == "1"};
    if (c.doc.empty() || c.annotator.empty() || c.theme.empty()) {
      throw ParseError(source, lineno, "doc_id, annotator_id and theme must be nonempty");
    }
    cells.push_back(std::move(c));
  }
  if (cells.empty()) throw DataError(source + ": no annotation rows");
  return AnnotationSet::from_cells(cells);
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open annotation file " + path.string());
  return parse_annotations_csv(in, path.string());
}

AlphaResult krippendorff_alpha_nominal(std::span<const std::vector<int>> units) {
  // Coincidence matrix o[c][k] = sum_u (ordered pairs (c,k) within u) / (m_u - 1).
  std::map<int, std::map<int, double>> o;
  std::map<int, double> nc;
  double n = 0.0;
  for (const auto& u : units) {
    const std::size_t m = u.size();
    if (m < 2) continue;
    std::map<int, double> counts;
    for (int v : u) counts[v] += 1.0;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (const auto& [c, a] : counts) {
      for (const auto& [k, b] : counts) o[c][k] += (c == k ? a * (a - 1.0) : a * b) * w;
    }
    for (const auto& [c, a] : counts) nc[c] += a;
    n += static_cast<double>(m);
  }
  if (n == 0.0) throw DataError("krippendorff alpha: no unit has two or more ratings");
  AlphaResult r;
  r.pairable = static_cast<std::size_t>(n);
  double observed = 0.0;
  for (const auto& [c, row] : o) {
    for (const auto& [k, v] : row) {
      if (c != k) observed += v;
    }
  }
  double expected = 0.0;
  for (const auto& [c, a] : nc) {
    for (const auto& [k, b] : nc) {
      if (c != k) expected += a * b;
    }
  }
  if (expected == 0.0) {
    r.alpha = 1.0;
    r.degenerate = true;
    return r;
  }
  r.alpha = 1.0 - (n - 1.0) * observed / expected;
  return r;
}

AlphaResult krippendorff_alpha(const AnnotationSet& annotations, std::size_t theme) {
  std::vector<std::vector<int>> units(annotations.docs().size());
  for (std::size_t d = 0; d < units.size(); ++d) {
    for (std::size_t a = 0; a < annotations.annotators().size(); ++a) {
      units[d].push_back(annotations.present(d, a, theme) ? 1 : 0);
    }
  }
  return krippendorff_alpha_nominal(units);
}

std::string kappa_band(double kappa) {
  constexpr double eps = 1e-12;
  if (kappa <= 0.0 + eps) return "poor";
  if (kappa <= 0.20 + eps) return "slight";
  if (kappa <= 0.40 + eps) return "fair";
  if (kappa <= 0.60 + eps) return "moderate";
  if (kappa <= 0.80 + eps) return "substantial";
  return "almost perfect";
}

KappaResult cohen_kappa(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw DataError("cohen kappa: sequences differ in length");
  if (a.empty()) throw DataError("cohen kappa: empty sequences");
  // kappa = (N*A - S) / (N^2 - S), with A the agreement count and S the sum of marginal
  // products; exact in integers.
  std::int64_t n = static_cast<std::int64_t>(a.size());
  std::int64_t agree = 0, a1 = 0, b1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += (a[i] != 0) == (b[i] != 0) ? 1 : 0;
    a1 += a[i] != 0 ? 1 : 0;
    b1 += b[i] != 0 ? 1 : 0;
  }
  const std::int64_t s = a1 * b1 + (n - a1) * (n - b1);
  KappaResult r;
  r.observed = static_cast<double>(agree) / static_cast<double>(n);
  r.expected = static_cast<double>(s) / static_cast<double>(n * n);
  if (n * n == s) {
    r.kappa = 1.0;
    r.degenerate = true;
  } else {
    r.kappa = static_cast<double>(n * agree - s) / static_cast<double>(n * n - s);
  }
  r.band = kappa_band(r.kappa);
  return r;
}

TieRule parse_tie_rule(const std::string& s) {
  if (s == "error") return TieRule::error;
  if (s == "absent") return TieRule::absent;
  if (s == "present") return TieRule::present;
  throw UsageError("unknown tie rule \"" + s + "\" (error|absent|present)");
}

VoteResult majority_vote(const AnnotationSet& annotations, std::size_t theme, TieRule rule) {
  const std::size_t A = annotations.annotators().size();
  if (A % 2 == 0 && rule == TieRule::error) {
    throw UsageError("majority vote over an even number of annotators (" + std::to_string(A) + ") needs a tie rule");
  }
  VoteResult r;
  for (std::size_t d = 0; d < annotations.docs().size(); ++d) {
    std::size_t yes = 0;
    for (std::size_t a = 0; a < A; ++a) yes += annotations.present(d, a, theme) ? 1 : 0;
    const bool tie = 2 * yes == A;
    r.tie.push_back(tie);
    r.present.push_back(tie ? rule == TieRule::present : 2 * yes > A);
  }
  return r;
}

Prevalence prevalence(const std::vector<std::vector<std::size_t>>& labels, std::size_t num_themes) {
  if (labels.empty()) throw DataError("prevalence: no documents");
  Prevalence p;
  p.num_docs = labels.size();
  p.theme_fraction.assign(num_themes, 0.0);
  double none = 0.0;
  for (const auto& l : labels) {
    std::vector<bool> seen(num_themes, false);
    for (std::size_t t : l) seen.at(t) = true;
    bool any = false;
    for (std::size_t t = 0; t < num_themes; ++t) {
      if (seen[t]) {
        p.theme_fraction[t] += 1.0;
        any = true;
      }
    }
    if (!any) none += 1.0;
  }
  const double n = static_cast<double>(labels.size());
  for (double& f : p.theme_fraction) f /= n;
  p.no_theme_fraction = none / n;
  return p;
}

std::string render_agreement_markdown(const AnnotationSet& ann, TieRule rule) {
  const auto& themes = ann.themes();
  const auto& annotators = ann.annotators();
  std::vector<std::vector<std::size_t>> gold(ann.docs().size());
  std::size_t ties = 0;
  for (std::size_t t = 0; t < themes.size(); ++t) {
    const auto vote = majority_vote(ann, t, rule);
    for (std::size_t d = 0; d < gold.size(); ++d) {
      if (vote.present[d]) gold[d].push_back(t);
      ties += vote.tie[d] ? 1 : 0;
    }
  }
  const auto prev = prevalence(gold, themes.size());

  std::ostringstream out;
  out << "# Inter-annotator agreement\n\n";
  out << "Documents: " << ann.docs().size() << ", annotators: " << annotators.size() << "\n\n";
  out << "| |";
  for (const auto& t : themes) out << " " << t << " |";
  out << " No themes present |\n|---|";
  for (std::size_t t = 0; t <= themes.size(); ++t) out << "---|";
  out << "\n| Krippendorff's alpha |";
  for (std::size_t t = 0; t < themes.size(); ++t) {
    const auto a = krippendorff_alpha(ann, t);
    out << " " << fmt(a.alpha, 2) << (a.degenerate ? "*" : "") << " |";
  }
  out << " |\n| Prevalence (majority vote) |";
  for (double f : prev.theme_fraction) out << " " << fmt(100.0 * f, 0) << "% |";
  out << " " << fmt(100.0 * prev.no_theme_fraction, 0) << "% |\n\n";

  if (annotators.size() >= 2) {
    out << "## Cohen's kappa by annotator pair\n\n| Theme | Pair | Kappa | Band |\n|---|---|---|---|\n";
    for (std::size_t t = 0; t < themes.size(); ++t) {
      for (std::size_t i = 0; i < annotators.size(); ++i) {
        for (std::size_t j = i + 1; j < annotators.size(); ++j) {
          const auto k = cohen_kappa(ann.column(i, t), ann.column(j, t));
          out << "| " << themes[t] << " | " << annotators[i] << " / " << annotators[j] << " | " << fmt(k.kappa, 3)
              << (k.degenerate ? "*" : "") << " | " << k.band << " |\n";
        }
      }
    }
    out << "\n";
  }
  out << "---\n\nBands: poor <= 0, slight <= 0.20, fair <= 0.40, moderate <= 0.60, substantial <= 0.80, "
         "almost perfect above. * marks a degenerate statistic (no expected disagreement), reported as 1.\n";
  if (ties) out << "Majority-vote ties resolved by rule: " << ties << " cells.\n";
  return out.str();
}

}  // namespace wstc
