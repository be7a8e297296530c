#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace cbdetect {

enum class TruthClass { clickbait, no_clickbait };

struct PostInstance {
  std::string id;
  std::string post_text;                       // array elements joined with one space
  std::string target_title;
  std::string target_description;
  std::vector<std::string> target_keywords;    // comma-split, trimmed, empties dropped
  std::vector<std::string> target_paragraphs;
  std::vector<std::string> target_captions;
  std::string post_timestamp;                  // opaque
  std::vector<std::string> post_media;         // opaque
};

struct TruthRecord {
  std::string id;
  std::vector<double> judgments;
  double mean_score = 0.0;
  TruthClass truth_class = TruthClass::no_clickbait;
};

struct LabeledRecord {
  PostInstance instance;
  TruthRecord truth;
};

struct LabeledCorpus {
  std::vector<LabeledRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct FoldAssignment {
  int k = 0;
  std::unordered_map<std::string, int> assignment;  // id -> fold in [0, k)
};

struct ParseStats {
  // Judgments that do not land within 0.05 of a 4-point scale value
  // [0, 1/3, 2/3, 1] are kept verbatim but counted here.
  std::size_t off_scale_judgments = 0;
};

std::vector<PostInstance> parse_instances(std::istream& in);
std::vector<TruthRecord> parse_truth(std::istream& in, ParseStats* stats = nullptr);

std::vector<PostInstance> load_instances(const std::string& path);
std::vector<TruthRecord> load_truth(const std::string& path, ParseStats* stats = nullptr);

LabeledCorpus join_corpus(const std::vector<PostInstance>& instances,
                          const std::vector<TruthRecord>& truths);

// Deterministic for a fixed seed; |train| = round(train_fraction * n).
std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     double train_fraction,
                                                     std::uint64_t seed);

FoldAssignment make_folds(const LabeledCorpus& corpus, int k, std::uint64_t seed);

const char* to_string(TruthClass c);
TruthClass truth_class_from_string(const std::string& s);

}  // namespace cbdetect
