#include "cbdetect/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "cbdetect/prng.hpp"

namespace cbdetect {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// postText and similar fields arrive as a string or an array of strings
// depending on the dataset variant; arrays are joined with a single space.
std::string string_or_joined_array(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!e.is_string()) continue;
      if (!out.empty()) out += ' ';
      out += e.get<std::string>();
    }
    return out;
  }
  return "";
}

std::vector<std::string> string_list(const json& v) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& e : v)
      if (e.is_string()) out.push_back(e.get<std::string>());
  } else if (v.is_string()) {
    out.push_back(v.get<std::string>());
  }
  return out;
}

// targetKeywords: comma-separated string or array; trimmed, empties dropped.
std::vector<std::string> keyword_list(const json& v) {
  std::vector<std::string> raw;
  if (v.is_array()) {
    for (const auto& e : v)
      if (e.is_string()) raw.push_back(e.get<std::string>());
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string part;
    while (std::getline(ss, part, ',')) raw.push_back(part);
  }
  std::vector<std::string> out;
  for (auto& kw : raw) {
    std::string t = trim(kw);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string id_field(const json& obj, std::size_t line_no) {
  if (!obj.contains("id"))
    throw std::runtime_error("line " + std::to_string(line_no) + ": missing \"id\"");
  const auto& v = obj.at("id");
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw std::runtime_error("line " + std::to_string(line_no) + ": \"id\" must be a string");
}

json parse_line(const std::string& line, std::size_t line_no) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object())
    throw std::runtime_error("line " + std::to_string(line_no) + ": malformed JSON object");
  return obj;
}

constexpr double kScalePoints[] = {0.0, 1.0 / 3.0, 0.3, 2.0 / 3.0, 0.66, 1.0};
constexpr double kScaleTolerance = 0.05;

bool on_judgment_scale(double v) {
  for (double p : kScalePoints)
    if (std::fabs(v - p) <= kScaleTolerance) return true;
  return false;
}

}  // namespace

const char* to_string(TruthClass c) {
  return c == TruthClass::clickbait ? "clickbait" : "no-clickbait";
}

TruthClass truth_class_from_string(const std::string& s) {
  if (s == "clickbait") return TruthClass::clickbait;
  if (s == "no-clickbait") return TruthClass::no_clickbait;
  throw std::runtime_error("unknown truth class \"" + s + "\"");
}

std::vector<PostInstance> parse_instances(std::istream& in) {
  std::vector<PostInstance> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj = parse_line(line, line_no);
    PostInstance inst;
    inst.id = id_field(obj, line_no);
    if (inst.id.empty())
      throw std::runtime_error("line " + std::to_string(line_no) + ": empty \"id\"");
    if (!seen.insert(inst.id).second)
      throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate id \"" +
                               inst.id + "\"");
    if (obj.contains("postText")) inst.post_text = string_or_joined_array(obj["postText"]);
    if (obj.contains("targetTitle")) inst.target_title = string_or_joined_array(obj["targetTitle"]);
    if (obj.contains("targetDescription"))
      inst.target_description = string_or_joined_array(obj["targetDescription"]);
    if (obj.contains("targetKeywords")) inst.target_keywords = keyword_list(obj["targetKeywords"]);
    if (obj.contains("targetParagraphs"))
      inst.target_paragraphs = string_list(obj["targetParagraphs"]);
    if (obj.contains("targetCaptions")) inst.target_captions = string_list(obj["targetCaptions"]);
    if (obj.contains("postTimestamp") && obj["postTimestamp"].is_string())
      inst.post_timestamp = obj["postTimestamp"].get<std::string>();
    if (obj.contains("postMedia")) inst.post_media = string_list(obj["postMedia"]);
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<TruthRecord> parse_truth(std::istream& in, ParseStats* stats) {
  std::vector<TruthRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj = parse_line(line, line_no);
    TruthRecord rec;
    rec.id = id_field(obj, line_no);
    if (obj.contains("truthJudgments") && obj["truthJudgments"].is_array()) {
      for (const auto& j : obj["truthJudgments"]) {
        if (!j.is_number())
          throw std::runtime_error("line " + std::to_string(line_no) +
                                   ": non-numeric judgment");
        double v = j.get<double>();
        if (v < 0.0 || v > 1.0)
          throw std::runtime_error("line " + std::to_string(line_no) +
                                   ": judgment outside [0,1]");
        if (stats && !on_judgment_scale(v)) ++stats->off_scale_judgments;
        rec.judgments.push_back(v);
      }
    }
    if (obj.contains("truthMean") && obj["truthMean"].is_number()) {
      rec.mean_score = obj["truthMean"].get<double>();
    } else if (!rec.judgments.empty()) {
      double sum = 0.0;
      for (double v : rec.judgments) sum += v;
      rec.mean_score = sum / static_cast<double>(rec.judgments.size());
    }
    if (!obj.contains("truthClass") || !obj["truthClass"].is_string())
      throw std::runtime_error("line " + std::to_string(line_no) + ": missing truthClass");
    try {
      rec.truth_class = truth_class_from_string(obj["truthClass"].get<std::string>());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("file not found: " + path);
  return in;
}
}  // namespace

std::vector<PostInstance> load_instances(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_instances(in);
}

std::vector<TruthRecord> load_truth(const std::string& path, ParseStats* stats) {
  auto in = open_or_throw(path);
  return parse_truth(in, stats);
}

LabeledCorpus join_corpus(const std::vector<PostInstance>& instances,
                          const std::vector<TruthRecord>& truths) {
  std::unordered_map<std::string, const TruthRecord*> by_id;
  for (const auto& t : truths) by_id[t.id] = &t;

  LabeledCorpus corpus;
  std::unordered_set<std::string> used;
  std::vector<std::string> orphans;
  for (const auto& inst : instances) {
    auto it = by_id.find(inst.id);
    if (it == by_id.end()) {
      orphans.push_back(inst.id);
      continue;
    }
    used.insert(inst.id);
    corpus.records.push_back({inst, *it->second});
  }
  for (const auto& t : truths)
    if (!used.count(t.id)) orphans.push_back(t.id);
  if (!orphans.empty()) {
    std::string msg = "unmatched ids in join:";
    for (const auto& id : orphans) msg += " " + id;
    throw std::runtime_error(msg);
  }
  return corpus;
}

std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     double train_fraction,
                                                     std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::runtime_error("train_fraction must be in (0,1)");
  const std::size_t n = corpus.size();
  auto idx = shuffled_indices(n, seed);
  auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < n_train && i < n; ++i) in_train[idx[i]] = true;

  LabeledCorpus train, test;
  for (std::size_t i = 0; i < n; ++i)
    (in_train[i] ? train : test).records.push_back(corpus.records[i]);
  return {std::move(train), std::move(test)};
}

FoldAssignment make_folds(const LabeledCorpus& corpus, int k, std::uint64_t seed) {
  const std::size_t n = corpus.size();
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw std::runtime_error("k must satisfy 2 <= k <= corpus size");
  auto idx = shuffled_indices(n, seed);
  FoldAssignment folds;
  folds.k = k;
  for (std::size_t pos = 0; pos < n; ++pos)
    folds.assignment[corpus.records[idx[pos]].instance.id] = static_cast<int>(pos % k);
  return folds;
}

}  // namespace cbdetect
