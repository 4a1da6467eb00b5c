#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace wstc {

/// Version tag of the embedded stopword list; recorded in run metadata.
inline constexpr std::string_view kStopwordListVersion = "wstc-en-stop-1";

const std::unordered_set<std::string>& default_stopwords();

/// Lowercase, apostrophe-normalized contraction -> expansion.
const std::unordered_map<std::string, std::string>& default_contractions();

/// Porter suffix stripping (steps 1-4 and the double-l reduction of step 5).
/// The final-e removal of step 5 is skipped so forms such as "age" and "cope" stay
/// readable. Only all-lowercase ASCII words longer than two letters are touched.
std::string porter_stem(std::string_view word);

/// Applies porter_stem until the word stops changing. The result is a fixed point,
/// which makes re-running the pipeline over its own output a no-op.
std::string light_stem(std::string_view word);

/// Levenshtein distance, used by the optional spelling corrector and its tests.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace wstc
