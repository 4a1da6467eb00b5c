#include "wstc/explain.hpp"

#include <cstdio>
#include <sstream>

#include "wstc/error.hpp"

namespace wstc {

EngineKeywords extract_keywords(const EngineModel& model, std::size_t n) {
  if (n == 0) throw UsageError("keyword count must be >= 1");
  return {model.engine(), model.topic_words(n)};
}

std::string render_keywords_markdown(const std::vector<EngineKeywords>& tables, std::size_t n) {
  std::ostringstream out;
  out << "# Keywords per theme (n=" << n << ")\n\n";
  if (tables.empty()) return out.str();
  out << "| Theme |";
  for (const auto& t : tables) out << " " << t.engine << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < tables.size(); ++i) out << "---|";
  out << "\n";
  const auto& first = tables.front().table;
  for (std::size_t r = 0; r < first.size(); ++r) {
    out << "| " << first[r].theme << " |";
    for (const auto& t : tables) {
      out << " ";
      if (r >= t.table.size()) {
        out << " |";
        continue;
      }
      const auto& row = t.table[r];
      if (row.terms.empty()) out << "_(" << row.warning << ")_";
      for (std::size_t i = 0; i < row.terms.size(); ++i) {
        if (i) out << ", ";
        if (row.terms[i].is_seed) out << "**" << row.terms[i].term << "**";
        else out << row.terms[i].term;
      }
      out << " |";
    }
    out << "\n";
  }
  out << "\nTerms in bold are seed terms of that theme.\n";
  return out.str();
}

std::string render_keywords_csv(const std::vector<EngineKeywords>& tables) {
  std::ostringstream out;
  out << "engine,theme,rank,term,weight,is_seed\n";
  char buf[64];
  for (const auto& t : tables) {
    for (const auto& row : t.table) {
      for (std::size_t i = 0; i < row.terms.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", row.terms[i].weight);
        out << t.engine << ",\"" << row.theme << "\"," << (i + 1) << ",\"" << row.terms[i].term << "\"," << buf << ','
            << (row.terms[i].is_seed ? 1 : 0) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace wstc
