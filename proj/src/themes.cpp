#include "wstc/themes.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wstc/error.hpp"
#include "wstc/util.hpp"

namespace wstc {

namespace {

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    const bool space = c == ' ' || c == '\t';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

// Collapses internal whitespace runs to a single space.
std::string normalize_seed(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace

ThemeConfig::ThemeConfig(std::vector<ThemeSpec> themes) {
  std::set<std::string> names;
  for (auto& t : themes) {
    t.name = trim(t.name);
    if (t.name.empty()) throw DataError("theme name must not be empty");
    if (!names.insert(t.name).second) throw DataError("duplicate theme name \"" + t.name + "\"");
    std::vector<std::string> unique;
    for (const auto& raw : t.seeds) {
      std::string seed = normalize_seed(raw);
      if (seed.empty()) continue;
      const std::size_t words = word_count(seed);
      if (words > 2) {
        throw DataError("seed \"" + seed + "\" of theme \"" + t.name + "\" has " +
                        std::to_string(words) + " words (at most 2 allowed)");
      }
      if (std::find(unique.begin(), unique.end(), seed) == unique.end()) unique.push_back(std::move(seed));
    }
    if (unique.empty()) throw DataError("theme \"" + t.name + "\" has no seed terms");
    t.seeds = std::move(unique);
  }
  themes_ = std::move(themes);
}

std::vector<std::string> ThemeConfig::names() const {
  std::vector<std::string> out;
  for (const auto& t : themes_) out.push_back(t.name);
  return out;
}

std::optional<std::size_t> ThemeConfig::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < themes_.size(); ++i) {
    if (themes_[i].name == name) return i;
  }
  return std::nullopt;
}

const ThemeConfig& default_theme_config() {
  static const ThemeConfig config({
      {"Cancer Pathways & Services",
       {"radiotherapy", "chemotherapy", "surgery", "treatment", "diagnosis", "diagnose",
        "aftercare", "referral", "screen", "monitoring", "operation", "stoma", "nurse", "doctor",
        "staff", "hospital"}},
      {"Comorbidities",
       {"angina", "heart failure", "copd", "asthma", "ulcer", "stroke", "dementia", "parkinson",
        "depression", "melanoma", "lymphoma", "arthritis", "old age", "anxiety"}},
      {"Physical Symptoms",
       {"nausea", "peripheral neuropathy", "bleeding", "cough", "cold", "fracture", "vomit",
        "sex life", "sleep", "weight", "appetite", "pain", "ache", "nausea", "constipation",
        "concern", "diarrhoea", "wind", "constipation", "bowel movement", "fatigue", "weakness",
        "tiredness", "energy", "strength", "memory", "concentration", "balance",
        "mobility problem", "sex"}},
      {"Psychological & Emotional Symptoms",
       {"embarrassment", "fear", "afraid", "loss", "worry", "emotional", "gratitude", "praise",
        "relief", "hope", "peace", "faith", "cop", "pray", "embarrass", "cope", "worried",
        "confidence", "mood", "positive attitude", "depressed", "anxious", "optimistic",
        "attitude"}},
      {"Social Function",
       {"job", "employment", "financial", "insurance", "money", "husband", "wife", "spouse",
        "partner", "grandchild", "family", "child", "child", "support family", "social life",
        "friend", "community", "dependent", "socialise", "isolation", "isolated"}},
      {"Daily Life",
       {"travel", "difficulty walk", "usual activity", "activity", "lift", "drive", "diet",
        "lifestyle", "housework", "exercise", "active", "physical activity", "dress", "hobby",
        "wash", "stairs"}},
  });
  return config;
}

ThemeConfig parse_theme_config(std::string_view text, const std::string& source) {
  const std::string stripped = trim(text);
  if (!stripped.empty() && stripped.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(stripped);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(source + ": invalid JSON theme config: " + e.what());
    }
    if (!j.contains("themes") || !j["themes"].is_array()) {
      throw DataError(source + ": JSON theme config needs a \"themes\" array");
    }
    std::vector<ThemeSpec> specs;
    for (const auto& t : j["themes"]) {
      if (!t.contains("name") || !t["name"].is_string() || !t.contains("seeds") || !t["seeds"].is_array()) {
        throw DataError(source + ": each theme needs a string \"name\" and a \"seeds\" array");
      }
      ThemeSpec spec{t["name"].get<std::string>(), {}};
      for (const auto& s : t["seeds"]) {
        if (!s.is_string()) throw DataError(source + ": seeds must be strings");
        spec.seeds.push_back(s.get<std::string>());
      }
      specs.push_back(std::move(spec));
    }
    return ThemeConfig(std::move(specs));
  }

  std::vector<ThemeSpec> specs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, lineno, "expected theme_name<TAB>seeds");
    ThemeSpec spec{line.substr(0, tab), {}};
    for (auto& s : split(std::string_view(line).substr(tab + 1), ';')) spec.seeds.push_back(s);
    specs.push_back(std::move(spec));
  }
  return ThemeConfig(std::move(specs));
}

ThemeConfig load_theme_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open theme config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theme_config(buf.str(), path.string());
}

std::string serialize_theme_config(const ThemeConfig& config) {
  std::string out;
  for (const auto& t : config.themes()) {
    out += t.name;
    out += '\t';
    for (std::size_t i = 0; i < t.seeds.size(); ++i) {
      if (i) out += ';';
      out += t.seeds[i];
    }
    out += '\n';
  }
  return out;
}

bool ResolvedSeeds::contains(std::size_t theme, TermId term) const {
  const auto& ts = themes[theme].terms;
  return std::find(ts.begin(), ts.end(), term) != ts.end();
}

std::vector<bool> ResolvedSeeds::seed_mask(std::size_t vocab_size) const {
  std::vector<bool> mask(vocab_size, false);
  for (const auto& t : themes) {
    for (TermId id : t.terms) mask[id] = true;
  }
  return mask;
}

std::vector<std::string> seed_keys(const ThemeConfig& config, const PreprocessOptions& options) {
  std::set<std::string> keys;
  for (const auto& t : config.themes()) {
    for (const auto& s : t.seeds) {
      const auto tokens = pipeline_tokens(s, options);
      if (tokens.empty()) continue;
      for (const auto& tok : tokens) keys.insert(tok);
      if (tokens.size() >= 2) keys.insert(tokens[0] + " " + tokens[1]);
    }
  }
  return {keys.begin(), keys.end()};
}

ResolvedSeeds resolve_seeds(const ThemeConfig& config, const Vocabulary& vocab,
                            const PreprocessOptions& options, bool unigrams_only) {
  ResolvedSeeds out;
  out.unigrams_only = unigrams_only;
  for (const auto& theme : config.themes()) {
    ResolvedTheme rt;
    auto add = [&rt](TermId id) {
      if (std::find(rt.terms.begin(), rt.terms.end(), id) == rt.terms.end()) rt.terms.push_back(id);
    };
    for (const auto& seed : theme.seeds) {
      const auto tokens = pipeline_tokens(seed, options);
      bool resolved = false;
      if (unigrams_only) {
        for (const auto& tok : tokens) {
          if (auto id = vocab.find(tok)) {
            add(*id);
            resolved = true;
          }
        }
      } else if (auto key = preprocess_seed_term(seed, options)) {
        if (auto id = vocab.find(*key)) {
          add(*id);
          resolved = true;
        }
      }
      if (!resolved) {
        rt.dropped.push_back(seed);
        out.warnings.push_back("seed \"" + seed + "\" of theme \"" + theme.name +
                               "\" is not in the corpus vocabulary");
      }
    }
    if (rt.terms.empty()) {
      throw DataError("every seed of theme \"" + theme.name + "\" is out of vocabulary");
    }
    out.themes.push_back(std::move(rt));
  }
  return out;
}

}  // namespace wstc
