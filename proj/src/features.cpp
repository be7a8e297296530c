#include "cbdetect/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cbdetect {

namespace {

const char* const kPennTags[] = {
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN",
    "NNP", "NNPS", "NNS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS",
    "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT",
    "WP", "WP$", "WRB",
};

const char* const kRunCountTags[] = {"DT", "WRB", "NN", "PRP", "WP", "WDT", "RB"};

// Tag core for the frozen 2-gram list; all ordered pairs are enumerated.
const char* const kBigramCore[] = {"NNP", "NN", "NNS", "IN", "DT",
                                   "JJ", "PRP", "VBZ", "VBD", "RB"};

const char* const kExtraBigrams[] = {"NNP POS", "VBN IN", "PRP VBP", "NNP ."};

const char* const kTrigrams[] = {
    "NNP NNP VBZ", "NN IN NNP", "IN NNP NNP", "NNP NNP NNP", "NNP NNP NN",
    "NNP NN NN",   "DT NN IN",  "IN DT NN",   "NN IN DT",    "JJ NN IN",
    "NNP VBZ DT",
};

const char* const k5W1H[] = {"who", "what", "when", "where", "why", "which", "how"};

bool tag_is(const std::string& tag, const char* prefix) {
  return tag.rfind(prefix, 0) == 0;
}

bool is_np_tag(const std::string& tag) { return tag_is(tag, "JJ") || tag_is(tag, "NN"); }

struct TextStats {
  int words = 0;
  int sentences = 0;
  int syllables = 0;
};

TextStats text_stats(const std::string& text) {
  TextStats st;
  for (const auto& tok : tokenize(text)) {
    if (!is_word_token(tok)) continue;
    ++st.words;
    st.syllables += count_syllables(tok);
  }
  st.sentences = static_cast<int>(split_sentences(text).size());
  if (st.words > 0 && st.sentences == 0) st.sentences = 1;
  return st;
}

}  // namespace

const char* to_string(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::post_related: return "post_related";
    case FeatureGroup::target_related: return "target_related";
    case FeatureGroup::relation: return "relation";
  }
  return "?";
}

FeatureGroup feature_group_from_string(const std::string& s) {
  if (s == "post_related") return FeatureGroup::post_related;
  if (s == "target_related") return FeatureGroup::target_related;
  if (s == "relation") return FeatureGroup::relation;
  throw std::runtime_error("unknown feature group \"" + s + "\"");
}

FeatureSchema::FeatureSchema(std::vector<SchemaEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].name, i).second)
      throw std::runtime_error("duplicate feature name \"" + entries_[i].name + "\"");
  }
}

FeatureSchema FeatureSchema::builtin() {
  std::vector<SchemaEntry> e;
  const auto post = FeatureGroup::post_related;

  e.push_back({"Number of tokens", post});
  e.push_back({"Number of words", post});
  e.push_back({"Word length of post text", post});
  e.push_back({"Average length of words in post", post});
  e.push_back({"Length of the longest word in post text", post});
  e.push_back({"Whether the post start with number", post});
  e.push_back({"Whether post text start with 5W1H", post});
  e.push_back({"Whether exist QM", post});
  e.push_back({"Ratio of stop words in post text", post});
  e.push_back({"Number of internet slangs", post});
  e.push_back({"Sentiment score of post text", post});
  e.push_back({"Readability of post text", post});
  e.push_back({"Whether exist NUMBER NP VB", post});
  e.push_back({"Whether exist NUMBER NP THAT", post});
  e.push_back({"Count POS pattern this/these NN", post});
  e.push_back({"Whether exist EX", post});

  for (const char* tag : kPennTags) e.push_back({std::string("Number of ") + tag, post});
  e.push_back({"Number of ','", post});
  for (const char* tag : kRunCountTags)
    e.push_back({std::string("Count POS pattern ") + tag, post});

  for (const char* a : kBigramCore)
    for (const char* b : kBigramCore)
      e.push_back({std::string("POS 2-gram ") + a + " " + b, post});
  for (const char* g : kExtraBigrams) e.push_back({std::string("POS 2-gram ") + g, post});
  for (const char* g : kTrigrams) e.push_back({std::string("POS 3-gram ") + g, post});

  e.push_back({"Readability of target paragraphs (1)", FeatureGroup::target_related});
  e.push_back({"Readability of target paragraphs (2)", FeatureGroup::target_related});

  e.push_back({"Similarity between post and target title", FeatureGroup::relation});
  e.push_back({"Similarity between post and target paragraphs", FeatureGroup::relation});
  e.push_back({"Match between keywords and post", FeatureGroup::relation});

  return FeatureSchema(std::move(e));
}

int FeatureSchema::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

std::size_t FeatureSchema::group_count(FeatureGroup g) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [g](const SchemaEntry& e) { return e.group == g; }));
}

FeatureSchema FeatureSchema::subset(const std::vector<std::size_t>& indices) const {
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SchemaEntry> out;
  for (std::size_t i : sorted) {
    if (i >= entries_.size()) throw std::runtime_error("schema subset index out of range");
    out.push_back(entries_[i]);
  }
  return FeatureSchema(std::move(out));
}

std::uint64_t FeatureSchema::checksum() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    h ^= 0x1F;
    h *= 0x100000001B3ULL;
  };
  for (const auto& entry : entries_) {
    mix(entry.name);
    mix(to_string(entry.group));
  }
  return h;
}

namespace {
std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}
}  // namespace

void FeatureSchema::save_manifest(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schema manifest: " + path);
  out << "cbdetect-schema v1\n";
  out << "checksum\t" << checksum_hex(checksum()) << "\n";
  for (const auto& e : entries_) out << to_string(e.group) << "\t" << e.name << "\n";
}

FeatureSchema FeatureSchema::load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema manifest: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "cbdetect-schema v1")
    throw std::runtime_error(path + ": not a cbdetect schema manifest");
  if (!std::getline(in, line) || line.rfind("checksum\t", 0) != 0)
    throw std::runtime_error(path + ": missing checksum line");
  std::string declared = line.substr(9);
  std::vector<SchemaEntry> entries;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ": expected group<TAB>name");
    entries.push_back({line.substr(tab + 1), feature_group_from_string(line.substr(0, tab))});
  }
  FeatureSchema schema(std::move(entries));
  if (checksum_hex(schema.checksum()) != declared)
    throw std::runtime_error(path + ": schema checksum mismatch");
  return schema;
}

double overlap_similarity(const Tokens& a, const Tokens& b) {
  std::map<std::string, int> counts;
  int na = 0, nb = 0;
  for (const auto& t : a) {
    if (!is_word_token(t)) continue;
    ++counts[to_lower(t)];
    ++na;
  }
  int overlap = 0;
  for (const auto& t : b) {
    if (!is_word_token(t)) continue;
    ++nb;
    auto it = counts.find(to_lower(t));
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (na + nb == 0) return 0.0;
  return 2.0 * overlap / static_cast<double>(na + nb);
}

int keyword_match_count(const Tokens& post, const std::vector<std::string>& keywords) {
  std::vector<std::string> lowered;
  lowered.reserve(post.size());
  for (const auto& t : post) lowered.push_back(to_lower(t));

  int matches = 0;
  for (const auto& kw : keywords) {
    Tokens kw_tokens = tokenize(kw);
    if (kw_tokens.empty()) continue;
    for (auto& t : kw_tokens) t = to_lower(t);
    bool found = false;
    for (std::size_t i = 0; i + kw_tokens.size() <= lowered.size() && !found; ++i) {
      found = std::equal(kw_tokens.begin(), kw_tokens.end(), lowered.begin() + i);
    }
    if (found) ++matches;  // each keyword counted at most once
  }
  return matches;
}

int detect_pos_pattern(const TaggedTokens& tagged, const PatternId& pattern) {
  switch (pattern.kind) {
    case PatternKind::number_np_vb: {
      for (std::size_t i = 0; i < tagged.size(); ++i) {
        if (tagged[i].tag != "CD") continue;
        std::size_t j = i + 1;
        while (j < tagged.size() && is_np_tag(tagged[j].tag)) ++j;
        if (j == i + 1) continue;  // need at least one NP token
        // allow auxiliaries/adverbs between the noun phrase and the verb
        while (j < tagged.size() && (tagged[j].tag == "MD" || tag_is(tagged[j].tag, "RB"))) ++j;
        if (j < tagged.size() && tag_is(tagged[j].tag, "VB")) return 1;
      }
      return 0;
    }
    case PatternKind::number_np_that: {
      for (std::size_t i = 0; i < tagged.size(); ++i) {
        if (tagged[i].tag != "CD") continue;
        std::size_t j = i + 1;
        while (j < tagged.size() && is_np_tag(tagged[j].tag)) ++j;
        if (j == i + 1) continue;
        if (j < tagged.size() && to_lower(tagged[j].token) == "that" &&
            (tagged[j].tag == "WDT" || tagged[j].tag == "IN"))
          return 1;
      }
      return 0;
    }
    case PatternKind::this_these_nn: {
      int count = 0;
      for (std::size_t i = 0; i + 1 < tagged.size(); ++i) {
        std::string w = to_lower(tagged[i].token);
        if ((w == "this" || w == "these") && tag_is(tagged[i + 1].tag, "NN")) ++count;
      }
      return count;
    }
    case PatternKind::tag_count: {
      int count = 0;
      for (const auto& t : tagged)
        if (t.tag == pattern.tag) ++count;
      return count;
    }
    case PatternKind::exist_ex: {
      for (const auto& t : tagged)
        if (t.tag == "EX") return 1;
      return 0;
    }
    case PatternKind::question_mark: {
      for (const auto& t : tagged)
        if (t.token == "?") return 1;
      return 0;
    }
  }
  throw std::runtime_error("unknown POS pattern id");
}

double flesch_kincaid_grade(const std::string& text) {
  TextStats st = text_stats(text);
  if (st.words == 0) return 0.0;
  return 0.39 * st.words / st.sentences + 11.8 * st.syllables / st.words - 15.59;
}

double flesch_reading_ease(const std::string& text) {
  TextStats st = text_stats(text);
  if (st.words == 0) return 0.0;
  return 206.835 - 1.015 * st.words / st.sentences - 84.6 * st.syllables / st.words;
}

std::map<std::string, int> pos_ngram_counts(const TaggedTokens& tagged, int n) {
  if (n < 1 || n > 3) throw std::runtime_error("pos_ngram_counts: n must be in {1,2,3}");
  std::map<std::string, int> counts;
  if (tagged.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tagged.size(); ++i) {
    std::string key = tagged[i].tag;
    for (int j = 1; j < n; ++j) key += " " + tagged[i + j].tag;
    ++counts[key];
  }
  return counts;
}

std::map<std::string, double> post_flags(const Tokens& tokens, const Lexicons& lexicons) {
  std::map<std::string, double> flags;
  int words = 0, stop = 0, slang = 0, commas = 0;
  std::size_t char_total = 0, longest = 0;
  bool qm = false;
  std::string first_word;
  for (const auto& t : tokens) {
    if (t == "?") qm = true;
    if (t == ",") ++commas;
    if (!is_word_token(t)) continue;
    ++words;
    if (first_word.empty()) first_word = t;
    char_total += t.size();
    longest = std::max(longest, t.size());
    std::string lower = to_lower(t);
    if (lexicons.stop_words.count(lower)) ++stop;
    if (lexicons.slang.count(lower)) ++slang;
  }
  bool starts_number = !tokens.empty() && !tokens[0].empty() &&
                       std::isdigit(static_cast<unsigned char>(tokens[0][0]));
  bool starts_5w1h = false;
  if (!first_word.empty()) {
    std::string lower = to_lower(first_word);
    for (const char* w : k5W1H)
      if (lower == w) starts_5w1h = true;
  }
  flags["token_count"] = static_cast<double>(tokens.size());
  flags["word_count"] = words;
  flags["char_length"] = static_cast<double>(char_total);
  flags["avg_word_length"] = words ? static_cast<double>(char_total) / words : 0.0;
  flags["longest_word_length"] = static_cast<double>(longest);
  flags["starts_with_number"] = starts_number ? 1.0 : 0.0;
  flags["starts_with_5w1h"] = starts_5w1h ? 1.0 : 0.0;
  flags["has_question_mark"] = qm ? 1.0 : 0.0;
  flags["comma_count"] = commas;
  flags["stop_word_ratio"] = words ? static_cast<double>(stop) / words : 0.0;
  flags["slang_count"] = slang;
  return flags;
}

FeatureVector extract_features(const PostInstance& instance, const FeatureSchema& schema,
                               const Lexicons& lexicons, const Tagger& tagger) {
  Tokens post_tokens = tokenize(instance.post_text);
  TaggedTokens tagged = tagger.tag(post_tokens);
  auto flags = post_flags(post_tokens, lexicons);
  auto unigrams = pos_ngram_counts(tagged, 1);
  auto bigrams = pos_ngram_counts(tagged, 2);
  auto trigrams = pos_ngram_counts(tagged, 3);

  std::string target_paragraphs;
  for (const auto& p : instance.target_paragraphs) {
    if (!target_paragraphs.empty()) target_paragraphs += ' ';
    target_paragraphs += p;
  }

  auto tag_runs = [&tagged](const std::string& tag) {
    int runs = 0;
    bool in_run = false;
    for (const auto& t : tagged) {
      if (t.tag == tag) {
        if (!in_run) ++runs;
        in_run = true;
      } else {
        in_run = false;
      }
    }
    return runs;
  };

  auto value_for = [&](const SchemaEntry& entry) -> double {
    const std::string& name = entry.name;
    if (name == "Number of tokens") return flags.at("token_count");
    if (name == "Number of words") return flags.at("word_count");
    if (name == "Word length of post text") return flags.at("char_length");
    if (name == "Average length of words in post") return flags.at("avg_word_length");
    if (name == "Length of the longest word in post text")
      return flags.at("longest_word_length");
    if (name == "Whether the post start with number") return flags.at("starts_with_number");
    if (name == "Whether post text start with 5W1H") return flags.at("starts_with_5w1h");
    if (name == "Whether exist QM") return flags.at("has_question_mark");
    if (name == "Ratio of stop words in post text") return flags.at("stop_word_ratio");
    if (name == "Number of internet slangs") return flags.at("slang_count");
    if (name == "Sentiment score of post text") return sentiment_score(post_tokens, lexicons);
    if (name == "Readability of post text") return flesch_kincaid_grade(instance.post_text);
    if (name == "Whether exist NUMBER NP VB")
      return detect_pos_pattern(tagged, {PatternKind::number_np_vb, ""});
    if (name == "Whether exist NUMBER NP THAT")
      return detect_pos_pattern(tagged, {PatternKind::number_np_that, ""});
    if (name == "Count POS pattern this/these NN")
      return detect_pos_pattern(tagged, {PatternKind::this_these_nn, ""});
    if (name == "Whether exist EX")
      return detect_pos_pattern(tagged, {PatternKind::exist_ex, ""});
    if (name == "Number of ','") {
      auto it = unigrams.find(",");
      return it == unigrams.end() ? 0.0 : it->second;
    }
    if (name.rfind("Number of ", 0) == 0) {
      auto it = unigrams.find(name.substr(10));
      return it == unigrams.end() ? 0.0 : it->second;
    }
    if (name.rfind("Count POS pattern ", 0) == 0) return tag_runs(name.substr(18));
    if (name.rfind("POS 2-gram ", 0) == 0) {
      auto it = bigrams.find(name.substr(11));
      return it == bigrams.end() ? 0.0 : it->second;
    }
    if (name.rfind("POS 3-gram ", 0) == 0) {
      auto it = trigrams.find(name.substr(11));
      return it == trigrams.end() ? 0.0 : it->second;
    }
    if (name == "Readability of target paragraphs (1)")
      return flesch_kincaid_grade(target_paragraphs);
    if (name == "Readability of target paragraphs (2)")
      return flesch_reading_ease(target_paragraphs);
    if (name == "Similarity between post and target title")
      return overlap_similarity(post_tokens, tokenize(instance.target_title));
    if (name == "Similarity between post and target paragraphs")
      return overlap_similarity(post_tokens, tokenize(target_paragraphs));
    if (name == "Match between keywords and post")
      return keyword_match_count(post_tokens, instance.target_keywords);
    throw std::runtime_error("no extractor for feature \"" + name + "\"");
  };

  FeatureVector vec;
  vec.id = instance.id;
  vec.values.reserve(schema.size());
  for (const auto& entry : schema.entries()) {
    double v = value_for(entry);
    if (!std::isfinite(v))
      throw std::runtime_error("non-finite value for feature \"" + entry.name + "\"");
    vec.values.push_back(v);
  }
  return vec;
}

}  // namespace cbdetect
