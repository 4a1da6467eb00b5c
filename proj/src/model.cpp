#include "wstc/model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "wstc/error.hpp"

namespace wstc {

using ojson = nlohmann::ordered_json;

TermWeightModel::TermWeightModel(std::string engine, std::vector<std::string> themes,
                                 std::vector<std::string> terms,
                                 std::vector<std::vector<bool>> seed_flags,
                                 std::vector<std::vector<double>> weights, ojson params, ojson state)
    : engine_(std::move(engine)),
      themes_(std::move(themes)),
      terms_(std::move(terms)),
      seed_flags_(std::move(seed_flags)),
      weights_(std::move(weights)),
      params_(std::move(params)),
      state_(std::move(state)) {
  if (weights_.size() != themes_.size() || seed_flags_.size() != themes_.size()) {
    throw FormatError("model: theme count does not match weight rows");
  }
  for (std::size_t t = 0; t < themes_.size(); ++t) {
    if (weights_[t].size() != terms_.size() || seed_flags_[t].size() != terms_.size()) {
      throw FormatError("model: weight row length does not match the vocabulary");
    }
  }
}

KeywordTable TermWeightModel::topic_words(std::size_t n) const {
  KeywordTable table;
  for (std::size_t t = 0; t < themes_.size(); ++t) {
    ThemeKeywords row;
    row.theme = themes_[t];
    const auto& w = weights_[t];
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] > 0.0) ids.push_back(i);
    }
    std::stable_sort(ids.begin(), ids.end(), [&w](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    if (ids.size() > n) ids.resize(n);
    for (std::size_t i : ids) row.terms.push_back({terms_[i], w[i], seed_flags_[t][i]});
    if (row.terms.empty()) row.warning = "no ranked terms (empty topic)";
    table.push_back(std::move(row));
  }
  return table;
}

ojson TermWeightModel::to_json() const {
  ojson j;
  j["format"] = "wstc-model";
  j["version"] = kModelFormatVersion;
  j["engine"] = engine_;
  j["themes"] = themes_;
  j["terms"] = terms_;
  ojson seeds = ojson::array();
  for (const auto& row : seed_flags_) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) ids.push_back(i);
    }
    seeds.push_back(ids);
  }
  j["seed_ids"] = std::move(seeds);
  j["weights"] = weights_;
  j["params"] = params_;
  j["state"] = state_;
  return j;
}

std::vector<std::vector<bool>> seed_flag_matrix(const ResolvedSeeds& seeds, std::size_t vocab_size) {
  std::vector<std::vector<bool>> out;
  for (const auto& t : seeds.themes) {
    std::vector<bool> row(vocab_size, false);
    for (TermId id : t.terms) row[id] = true;
    out.push_back(std::move(row));
  }
  return out;
}

std::unique_ptr<EngineModel> model_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.value("format", "") != "wstc-model") throw FormatError("not a wstc model file");
    if (j.value("version", 0) != kModelFormatVersion) throw FormatError("unsupported model version");
    auto themes = j.at("themes").get<std::vector<std::string>>();
    auto terms = j.at("terms").get<std::vector<std::string>>();
    std::vector<std::vector<bool>> flags;
    for (const auto& ids : j.at("seed_ids")) {
      std::vector<bool> row(terms.size(), false);
      for (const auto& id : ids) {
        const auto i = id.get<std::size_t>();
        if (i >= terms.size()) throw FormatError("model: seed id out of range");
        row[i] = true;
      }
      flags.push_back(std::move(row));
    }
    auto weights = j.at("weights").get<std::vector<std::vector<double>>>();
    ojson params = j.at("params");
    ojson state = j.at("state");
    return std::make_unique<TermWeightModel>(j.at("engine").get<std::string>(), std::move(themes),
                                             std::move(terms), std::move(flags), std::move(weights),
                                             std::move(params), std::move(state));
  } catch (const ojson::exception& e) {
    throw FormatError(std::string("malformed model JSON: ") + e.what());
  }
}

std::unique_ptr<EngineModel> load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path.string());
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    throw FormatError(path.string() + ": invalid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace wstc
