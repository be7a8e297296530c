#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cbdetect {

using Tokens = std::vector<std::string>;

struct TaggedToken {
  std::string token;
  std::string tag;  // Penn Treebank tag or punctuation tag
};

using TaggedTokens = std::vector<TaggedToken>;

struct Lexicons {
  std::unordered_set<std::string> stop_words;            // lowercase
  std::unordered_set<std::string> slang;                 // lowercase
  std::unordered_map<std::string, double> sentiment;     // lowercase -> [-1,1]
};

// Built-in lists, frozen in the binary so the pipeline runs with no
// external assets. Checksums are pinned by tests.
Lexicons builtin_lexicons();

std::unordered_set<std::string> load_word_list(const std::string& path);
std::unordered_map<std::string, double> load_weighted_list(const std::string& path);

// Greedy averaged-perceptron tagger. With no weights loaded it falls back to
// a deterministic rule tagger (built-in lexicon + suffix rules + digit->CD +
// capitalized non-initial -> NNP).
class Tagger {
 public:
  Tagger();  // fallback-only

  // Weights file: line-oriented `feature<TAB>tag<TAB>weight`.
  static Tagger from_weights_file(const std::string& path);

  TaggedTokens tag(const Tokens& tokens) const;

  bool has_weights() const { return !weights_.empty(); }

 private:
  std::string fallback_tag(const std::string& token, std::size_t position) const;
  std::string perceptron_tag(const Tokens& tokens, std::size_t position,
                             const std::string& prev_tag) const;

  std::unordered_map<std::string, std::unordered_map<std::string, double>> weights_;
  std::unordered_map<std::string, std::string> lexicon_;  // word -> tag
  std::vector<std::string> tagset_;
};

// Split on whitespace, then peel leading/trailing punctuation off each chunk
// as single-character tokens. Interior apostrophes and hyphens stay inside
// the word.
Tokens tokenize(const std::string& text);

bool is_word_token(const std::string& token);  // contains an alphanumeric char

// Split after '.', '!' or '?' followed by whitespace or end of text.
// Non-empty text always yields at least one sentence.
std::vector<std::string> split_sentences(const std::string& text);

// Maximal vowel groups (aeiouy), minus a trailing silent 'e' unless that
// would leave zero; >= 1 for anything containing a letter.
int count_syllables(const std::string& word);

// Mean lexicon weight over word tokens, clipped to [-1,1].
double sentiment_score(const Tokens& tokens, const Lexicons& lexicons);

std::string to_lower(const std::string& s);

// FNV-1a over the sorted entries; used to pin the frozen lexicon contents.
std::uint64_t word_list_checksum(const std::unordered_set<std::string>& words);

}  // namespace cbdetect
