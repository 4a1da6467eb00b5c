#include "wstc/text.hpp"

#include <algorithm>
#include <vector>

namespace wstc {

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your",
      "yours", "yourself", "yourselves", "he", "him", "his", "himself", "she", "her",
      "hers", "herself", "it", "its", "itself", "they", "them", "their", "theirs",
      "themselves", "what", "which", "who", "whom", "this", "that", "these", "those",
      "am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had",
      "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if",
      "or", "because", "as", "until", "while", "of", "at", "by", "for", "with",
      "about", "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
      "under", "again", "further", "then", "once", "here", "there", "when", "where",
      "why", "how", "all", "any", "both", "each", "few", "more", "most", "other",
      "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than", "too",
      "very", "s", "t", "can", "will", "just", "don", "should", "now", "d", "ll", "m",
      "o", "re", "ve", "y", "ain", "aren", "couldn", "didn", "doesn", "hadn", "hasn",
      "haven", "isn", "ma", "mightn", "mustn", "needn", "shan", "shouldn", "wasn",
      "weren", "won", "wouldn", "also", "would", "could", "shall", "might", "must",
      "cannot", "us", "ok"};
  return words;
}

const std::unordered_map<std::string, std::string>& default_contractions() {
  static const std::unordered_map<std::string, std::string> table = {
      {"ain't", "am not"}, {"aren't", "are not"}, {"can't", "cannot"},
      {"can't've", "cannot have"}, {"'cause", "because"}, {"could've", "could have"},
      {"couldn't", "could not"}, {"couldn't've", "could not have"},
      {"didn't", "did not"}, {"doesn't", "does not"}, {"don't", "do not"},
      {"hadn't", "had not"}, {"hadn't've", "had not have"}, {"hasn't", "has not"},
      {"haven't", "have not"}, {"he'd", "he would"}, {"he'd've", "he would have"},
      {"he'll", "he will"}, {"he's", "he is"}, {"how'd", "how did"},
      {"how'll", "how will"}, {"how's", "how is"}, {"i'd", "i would"},
      {"i'd've", "i would have"}, {"i'll", "i will"}, {"i'll've", "i will have"},
      {"i'm", "i am"}, {"i've", "i have"}, {"isn't", "is not"}, {"it'd", "it would"},
      {"it'd've", "it would have"}, {"it'll", "it will"}, {"it's", "it is"},
      {"let's", "let us"}, {"ma'am", "madam"}, {"mayn't", "may not"},
      {"might've", "might have"}, {"mightn't", "might not"}, {"must've", "must have"},
      {"mustn't", "must not"}, {"needn't", "need not"}, {"o'clock", "of the clock"},
      {"oughtn't", "ought not"}, {"shan't", "shall not"}, {"she'd", "she would"},
      {"she'd've", "she would have"}, {"she'll", "she will"}, {"she's", "she is"},
      {"should've", "should have"}, {"shouldn't", "should not"},
      {"shouldn't've", "should not have"}, {"so've", "so have"}, {"so's", "so is"},
      {"that'd", "that would"}, {"that's", "that is"}, {"there'd", "there would"},
      {"there's", "there is"}, {"there'll", "there will"}, {"they'd", "they would"},
      {"they'd've", "they would have"}, {"they'll", "they will"},
      {"they're", "they are"}, {"they've", "they have"}, {"to've", "to have"},
      {"wasn't", "was not"}, {"we'd", "we would"}, {"we'd've", "we would have"},
      {"we'll", "we will"}, {"we're", "we are"}, {"we've", "we have"},
      {"weren't", "were not"}, {"what'll", "what will"}, {"what're", "what are"},
      {"what's", "what is"}, {"what've", "what have"}, {"when's", "when is"},
      {"when've", "when have"}, {"where'd", "where did"}, {"where's", "where is"},
      {"where've", "where have"}, {"who'll", "who will"}, {"who's", "who is"},
      {"who've", "who have"}, {"why's", "why is"}, {"why've", "why have"},
      {"will've", "will have"}, {"won't", "will not"}, {"won't've", "will not have"},
      {"would've", "would have"}, {"wouldn't", "would not"},
      {"wouldn't've", "would not have"}, {"y'all", "you all"},
      {"you'd", "you would"}, {"you'd've", "you would have"}, {"you'll", "you will"},
      {"you're", "you are"}, {"you've", "you have"}, {"here's", "here is"},
      {"how're", "how are"}, {"who'd", "who would"}, {"who're", "who are"},
      {"why'd", "why did"}, {"where'll", "where will"}, {"there've", "there have"},
      {"that'll", "that will"}, {"this's", "this is"}, {"daren't", "dare not"},
      {"everyone's", "everyone is"}, {"nobody's", "nobody is"},
      {"somebody's", "somebody is"}, {"someone's", "someone is"},
      {"something's", "something is"}, {"nothing's", "nothing is"},
      {"everything's", "everything is"}, {"i'd've", "i would have"},
      {"gonna", "going to"}, {"gotta", "got to"}, {"wanna", "want to"},
      {"'em", "them"}, {"ne'er", "never"}, {"e'er", "ever"}, {"'tis", "it is"},
      {"'twas", "it was"}};
  return table;
}

namespace {

class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
    return b_;
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0..j_].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ - len + 1), s.size(), s) != 0) return false;
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.resize(static_cast<std::size_t>(j_ + 1));
    b_ += s;
    k_ = static_cast<int>(b_.size()) - 1;
  }

  void replace_if_measured(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (m() == 1 && cvc(k_)) set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("ational")) { replace_if_measured("ate"); break; }
        if (ends("tional")) { replace_if_measured("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { replace_if_measured("ence"); break; }
        if (ends("anci")) { replace_if_measured("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { replace_if_measured("ize"); break; }
        break;
      case 'l':
        if (ends("bli")) { replace_if_measured("ble"); break; }
        if (ends("alli")) { replace_if_measured("al"); break; }
        if (ends("entli")) { replace_if_measured("ent"); break; }
        if (ends("eli")) { replace_if_measured("e"); break; }
        if (ends("ousli")) { replace_if_measured("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { replace_if_measured("ize"); break; }
        if (ends("ation")) { replace_if_measured("ate"); break; }
        if (ends("ator")) { replace_if_measured("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { replace_if_measured("al"); break; }
        if (ends("iveness")) { replace_if_measured("ive"); break; }
        if (ends("fulness")) { replace_if_measured("ful"); break; }
        if (ends("ousness")) { replace_if_measured("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { replace_if_measured("al"); break; }
        if (ends("iviti")) { replace_if_measured("ive"); break; }
        if (ends("biliti")) { replace_if_measured("ble"); break; }
        break;
      case 'g':
        if (ends("logi")) { replace_if_measured("log"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[k_]) {
      case 'e':
        if (ends("icate")) { replace_if_measured("ic"); break; }
        if (ends("ative")) { replace_if_measured(""); break; }
        if (ends("alize")) { replace_if_measured("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { replace_if_measured("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { replace_if_measured("ic"); break; }
        if (ends("ful")) { replace_if_measured(""); break; }
        break;
      case 's':
        if (ends("ness")) { replace_if_measured(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("al")) break;
        return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e':
        // "-er" is kept so that a step-4 stem such as "peripher" stays a fixed point.
        return;
      case 'i':
        if (ends("ic")) break;
        return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
        if (ends("ou")) break;
        return;
      case 's':
        if (ends("ism")) break;
        return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u':
        if (ends("ous")) break;
        return;
      case 'v':
        if (ends("ive")) break;
        return;
      case 'z':
        if (ends("ize")) break;
        return;
      default:
        return;
    }
    if (m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == 'l' && double_consonant(k_) && m() > 1) --k_;
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

bool is_lower_alpha(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2 || !is_lower_alpha(word)) return std::string(word);
  return PorterStemmer(word).run();
}

std::string light_stem(std::string_view word) {
  std::string current(word);
  for (int pass = 0; pass < 16; ++pass) {
    std::string next = porter_stem(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace wstc
