#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cbdetect/corpus.hpp"
#include "cbdetect/textkit.hpp"

namespace cbdetect {

enum class FeatureGroup { post_related, target_related, relation };

struct SchemaEntry {
  std::string name;
  FeatureGroup group;
};

class FeatureSchema {
 public:
  static FeatureSchema builtin();  // the frozen 180-entry schema

  explicit FeatureSchema(std::vector<SchemaEntry> entries);

  const std::vector<SchemaEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const SchemaEntry& at(std::size_t i) const { return entries_[i]; }

  // index of a name, or -1
  int index_of(const std::string& name) const;

  std::size_t group_count(FeatureGroup g) const;

  // Sub-schema of the given indices, original order preserved.
  FeatureSchema subset(const std::vector<std::size_t>& indices) const;

  std::uint64_t checksum() const;  // FNV-1a over name+group, order-sensitive

  void save_manifest(const std::string& path) const;
  static FeatureSchema load_manifest(const std::string& path);

 private:
  std::vector<SchemaEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct FeatureVector {
  std::string id;
  std::vector<double> values;
};

enum class PatternKind {
  number_np_vb,
  number_np_that,
  this_these_nn,
  tag_count,       // occurrences of `tag`
  exist_ex,
  question_mark,
};

struct PatternId {
  PatternKind kind;
  std::string tag;  // for tag_count
};

int detect_pos_pattern(const TaggedTokens& tagged, const PatternId& pattern);

double overlap_similarity(const Tokens& a, const Tokens& b);
int keyword_match_count(const Tokens& post, const std::vector<std::string>& keywords);

double flesch_kincaid_grade(const std::string& text);
double flesch_reading_ease(const std::string& text);

std::map<std::string, int> pos_ngram_counts(const TaggedTokens& tagged, int n);

std::map<std::string, double> post_flags(const Tokens& tokens, const Lexicons& lexicons);

FeatureVector extract_features(const PostInstance& instance, const FeatureSchema& schema,
                               const Lexicons& lexicons, const Tagger& tagger);

const char* to_string(FeatureGroup g);
FeatureGroup feature_group_from_string(const std::string& s);

}  // namespace cbdetect
