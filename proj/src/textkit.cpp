#include "cbdetect/textkit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lexicon_data.hpp"

namespace cbdetect {


namespace {

bool is_ascii_alnum(unsigned char c) { return std::isalnum(c) != 0; }

bool is_letter(unsigned char c) { return std::isalpha(c) != 0; }

bool is_vowel(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool contains_digit(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string punctuation_tag(char c) {
  switch (c) {
    case '.': case '!': case '?': return ".";
    case ',': return ",";
    case ';': case ':': case '-': return ":";
    case '(': case '[': case '{': return "(";
    case ')': case ']': case '}': return ")";
    case '"': case '\'': case '`': return "''";
    case '$': return "$";
    case '#': return "#";
    default: return "SYM";
  }
}

bool ends_with(const std::string& s, const char* suffix) {
  std::size_t len = std::char_traits<char>::length(suffix);
  return s.size() >= len && s.compare(s.size() - len, len, suffix) == 0;
}

}  // namespace

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Tokens tokenize(const std::string& text) {
  Tokens tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;
    std::string chunk = text.substr(start, i - start);

    // locate the alphanumeric core of the chunk
    std::size_t lo = 0, hi = chunk.size();
    while (lo < hi && !is_ascii_alnum(static_cast<unsigned char>(chunk[lo]))) ++lo;
    while (hi > lo && !is_ascii_alnum(static_cast<unsigned char>(chunk[hi - 1]))) --hi;

    if (lo == hi) {
      for (char c : chunk) tokens.push_back(std::string(1, c));
      continue;
    }
    for (std::size_t p = 0; p < lo; ++p) tokens.push_back(std::string(1, chunk[p]));
    tokens.push_back(chunk.substr(lo, hi - lo));
    for (std::size_t p = hi; p < chunk.size(); ++p) tokens.push_back(std::string(1, chunk[p]));
  }
  return tokens;
}

bool is_word_token(const std::string& token) {
  return std::any_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::isalnum(c) != 0; });
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      bool at_break = (i + 1 == n) || std::isspace(static_cast<unsigned char>(text[i + 1]));
      if (at_break) {
        std::string s = text.substr(start, i + 1 - start);
        // trim surrounding whitespace
        std::size_t b = s.find_first_not_of(" \t\r\n");
        std::size_t e = s.find_last_not_of(" \t\r\n");
        if (b != std::string::npos) sentences.push_back(s.substr(b, e - b + 1));
        start = i + 1;
      }
    }
  }
  if (start < n) {
    std::string s = text.substr(start);
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) sentences.push_back(s.substr(b, e - b + 1));
  }
  return sentences;
}

int count_syllables(const std::string& word) {
  bool has_letter = std::any_of(word.begin(), word.end(),
                                [](unsigned char c) { return std::isalpha(c) != 0; });
  if (!has_letter) return 0;

  int groups = 0;
  bool in_group = false;
  for (char c : word) {
    if (is_letter(static_cast<unsigned char>(c)) && is_vowel(c)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  char last = static_cast<char>(std::tolower(static_cast<unsigned char>(word.back())));
  if (last == 'e' && groups > 1) --groups;
  return std::max(groups, 1);
}

double sentiment_score(const Tokens& tokens, const Lexicons& lexicons) {
  double sum = 0.0;
  int words = 0;
  for (const auto& t : tokens) {
    if (!is_word_token(t)) continue;
    ++words;
    auto it = lexicons.sentiment.find(to_lower(t));
    if (it != lexicons.sentiment.end()) sum += it->second;
  }
  double score = sum / std::max(1, words);
  return std::clamp(score, -1.0, 1.0);
}

Lexicons builtin_lexicons() {
  Lexicons lex;
  for (std::size_t i = 0; i < detail::kStopWordCount; ++i)
    lex.stop_words.insert(detail::kStopWords[i]);
  for (std::size_t i = 0; i < detail::kSlangCount; ++i)
    lex.slang.insert(detail::kSlang[i]);
  for (std::size_t i = 0; i < detail::kSentimentCount; ++i)
    lex.sentiment[detail::kSentiment[i].word] = detail::kSentiment[i].weight;
  return lex;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') out.insert(to_lower(line));
  }
  return out;
}

std::unordered_map<std::string, double> load_weighted_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weighted list: " + path);
  std::unordered_map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected word<TAB>weight");
    out[to_lower(line.substr(0, tab))] = std::stod(line.substr(tab + 1));
  }
  return out;
}

std::uint64_t word_list_checksum(const std::unordered_set<std::string>& words) {
  std::vector<std::string> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const auto& w : sorted) {
    for (char c : w) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    h ^= '\n';
    h *= 0x100000001B3ULL;
  }
  return h;
}

Tagger::Tagger() {
  for (std::size_t i = 0; i < detail::kTaggerLexiconCount; ++i)
    lexicon_[detail::kTaggerLexicon[i].word] = detail::kTaggerLexicon[i].tag;
}

Tagger Tagger::from_weights_file(const std::string& path) {
  Tagger tagger;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tagger weights: " + path);
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> tags;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = (t1 == std::string::npos) ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected feature<TAB>tag<TAB>weight");
    std::string feature = line.substr(0, t1);
    std::string tag = line.substr(t1 + 1, t2 - t1 - 1);
    double weight = std::stod(line.substr(t2 + 1));
    tagger.weights_[feature][tag] = weight;
    tags.insert(tag);
  }
  if (tagger.weights_.empty())
    throw std::runtime_error(path + ": no weights loaded");
  tagger.tagset_.assign(tags.begin(), tags.end());
  std::sort(tagger.tagset_.begin(), tagger.tagset_.end());
  return tagger;
}

std::string Tagger::fallback_tag(const std::string& token, std::size_t position) const {
  if (token.size() == 1 && !is_ascii_alnum(static_cast<unsigned char>(token[0])))
    return punctuation_tag(token[0]);
  if (all_digits(token) || contains_digit(token)) return "CD";

  auto it = lexicon_.find(token);
  if (it != lexicon_.end()) return it->second;
  it = lexicon_.find(to_lower(token));
  if (it != lexicon_.end()) return it->second;

  bool capitalized = std::isupper(static_cast<unsigned char>(token[0])) != 0;
  bool interior_upper =
      std::any_of(token.begin() + 1, token.end(),
                  [](unsigned char c) { return std::isupper(c) != 0; });
  if ((capitalized && position > 0) || interior_upper) return "NNP";

  std::string lower = to_lower(token);
  if (ends_with(lower, "ing")) return "VBG";
  if (ends_with(lower, "ed")) return "VBD";
  if (ends_with(lower, "ly")) return "RB";
  if (ends_with(lower, "est") && lower.size() > 4) return "JJS";
  if (ends_with(lower, "ous") || ends_with(lower, "ful") || ends_with(lower, "ive") ||
      ends_with(lower, "able") || ends_with(lower, "ible"))
    return "JJ";
  if (ends_with(lower, "tion") || ends_with(lower, "ment") || ends_with(lower, "ness") ||
      ends_with(lower, "ity"))
    return "NN";
  if (lower.size() > 1 && lower.back() == 's' && !ends_with(lower, "ss")) return "NNS";

  if (capitalized && position == 0) return "NNP";
  return "NN";
}

std::string Tagger::perceptron_tag(const Tokens& tokens, std::size_t position,
                                   const std::string& prev_tag) const {
  const std::string& word = tokens[position];
  std::string lower = to_lower(word);
  std::vector<std::string> features;
  features.push_back("bias");
  features.push_back("w=" + lower);
  if (lower.size() >= 3) features.push_back("suf3=" + lower.substr(lower.size() - 3));
  if (lower.size() >= 2) features.push_back("suf2=" + lower.substr(lower.size() - 2));
  features.push_back("pre1=" + lower.substr(0, 1));
  features.push_back("prevtag=" + prev_tag);
  if (position > 0) features.push_back("prevw=" + to_lower(tokens[position - 1]));
  if (std::isupper(static_cast<unsigned char>(word[0]))) features.push_back("cap");
  if (contains_digit(word)) features.push_back("digit");

  std::unordered_map<std::string, double> scores;
  bool any = false;
  for (const auto& f : features) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (const auto& [tag, w] : it->second) {
      scores[tag] += w;
      any = true;
    }
  }
  if (!any) return fallback_tag(word, position);

  // highest score, ties broken alphabetically for determinism
  std::string best;
  double best_score = 0.0;
  for (const auto& tag : tagset_) {
    auto it = scores.find(tag);
    if (it == scores.end()) continue;
    if (best.empty() || it->second > best_score) {
      best = tag;
      best_score = it->second;
    }
  }
  return best.empty() ? fallback_tag(word, position) : best;
}

TaggedTokens Tagger::tag(const Tokens& tokens) const {
  TaggedTokens out;
  out.reserve(tokens.size());
  std::string prev_tag = "-START-";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string tag;
    if (!tokens[i].empty() && tokens[i].size() == 1 &&
        !is_ascii_alnum(static_cast<unsigned char>(tokens[i][0]))) {
      tag = punctuation_tag(tokens[i][0]);
    } else if (has_weights()) {
      tag = perceptron_tag(tokens, i, prev_tag);
    } else {
      tag = fallback_tag(tokens[i], i);
    }
    out.push_back({tokens[i], tag});
    prev_tag = tag;
  }
  return out;
}

}  // namespace cbdetect
