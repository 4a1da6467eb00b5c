#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wstc {

/// doc x annotator x theme presence grid. Every cell is filled.
class AnnotationSet {
 public:
  struct Cell {
    std::string doc;
    std::string annotator;
    std::string theme;
    bool present = false;
  };

  /// Throws DataError on duplicate cells or an incomplete grid. Axis order is first-seen.
  static AnnotationSet from_cells(std::span<const Cell> cells);

  const std::vector<std::string>& docs() const { return docs_; }
  const std::vector<std::string>& annotators() const { return annotators_; }
  const std::vector<std::string>& themes() const { return themes_; }
  bool present(std::size_t doc, std::size_t annotator, std::size_t theme) const;
  /// One annotator's presence sequence over documents for a theme.
  std::vector<std::uint8_t> column(std::size_t annotator, std::size_t theme) const;
  std::size_t theme_index(const std::string& name) const;

 private:
  std::vector<std::string> docs_, annotators_, themes_;
  std::vector<std::uint8_t> grid_;  // [doc][annotator][theme]
};

/// CSV with header doc_id,annotator_id,theme,present and present in {0,1}.
AnnotationSet parse_annotations_csv(std::istream& in, const std::string& source = "<annotations>");
AnnotationSet load_annotations(const std::filesystem::path& path);

struct AlphaResult {
  double alpha = 1.0;
  bool degenerate = false;      // expected disagreement is zero (a single value was used)
  std::size_t pairable = 0;     // values in units with >= 2 ratings
};

/// Nominal Krippendorff alpha via the coincidence matrix. Each unit lists the values it
/// received; units with fewer than two values are skipped. Throws DataError if none remain.
AlphaResult krippendorff_alpha_nominal(std::span<const std::vector<int>> units);
AlphaResult krippendorff_alpha(const AnnotationSet& annotations, std::size_t theme);

struct KappaResult {
  double kappa = 1.0;
  double observed = 1.0;  // p_o
  double expected = 0.0;  // p_e
  bool degenerate = false;  // p_e = 1
  std::string band;
};

/// Landis-Koch band with inclusive upper bounds: poor (<= 0), slight (<= 0.20), fair
/// (<= 0.40), moderate (<= 0.60), substantial (<= 0.80), almost perfect.
std::string kappa_band(double kappa);

/// Cohen's kappa for two binary sequences, evaluated in integer arithmetic.
KappaResult cohen_kappa(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

enum class TieRule { error, absent, present };
TieRule parse_tie_rule(const std::string& s);

struct VoteResult {
  std::vector<bool> present;
  std::vector<bool> tie;
};

/// Present iff strictly more than half of the annotators mark it. With an even annotator
/// count the tie rule must not be `error`.
VoteResult majority_vote(const AnnotationSet& annotations, std::size_t theme, TieRule rule);

struct Prevalence {
  std::size_t num_docs = 0;
  std::vector<double> theme_fraction;
  double no_theme_fraction = 0.0;
};

Prevalence prevalence(const std::vector<std::vector<std::size_t>>& labels, std::size_t num_themes);

/// Markdown report: per-theme alpha and prevalence of the majority-vote gold, plus kappa
/// with its band for each annotator pair and theme.
std::string render_agreement_markdown(const AnnotationSet& annotations, TieRule rule);

}  // namespace wstc
