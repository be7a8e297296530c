#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbdetect/corpus.hpp"
#include "cbdetect/eval.hpp"
#include "cbdetect/features.hpp"
#include "cbdetect/learn.hpp"
#include "cbdetect/parallel.hpp"
#include "cbdetect/prng.hpp"
#include "cbdetect/select.hpp"
#include "cbdetect/textkit.hpp"

namespace {

using namespace cbdetect;
using nlohmann::json;

struct RunConfig {
  std::string instances_path;
  std::string truth_path;
  std::string schema_path;     // empty = built-in schema
  std::string tagger_path;     // empty = fallback tagger
  std::string model_path;
  std::string predictions_path;
  std::string out_path;
  std::string model_kind = "rf-reg";
  int trees = 400;
  int max_depth = 20;
  int k = 10;
  std::uint64_t seed = 42;
  std::size_t top_k = 60;
  double threshold = 0.5;
  double train_fraction = 1.0;
  bool rank_on_full = false;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool print_config = false;
};

// exit codes: 0 success, 1 computation error, 2 usage / I-O error
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_io_message(const std::string& msg) {
  return msg.rfind("file not found", 0) == 0 || msg.rfind("cannot open", 0) == 0 ||
         msg.rfind("cannot write", 0) == 0;
}

FeatureSchema load_schema(const RunConfig& cfg) {
  if (cfg.schema_path.empty()) return FeatureSchema::builtin();
  return FeatureSchema::load_manifest(cfg.schema_path);
}

Tagger load_tagger(const RunConfig& cfg) {
  if (cfg.tagger_path.empty()) return Tagger();
  return Tagger::from_weights_file(cfg.tagger_path);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix extract_matrix(const std::vector<PostInstance>& instances,
                      const FeatureSchema& schema, const Lexicons& lexicons,
                      const Tagger& tagger, int jobs) {
  Matrix m(instances.size(), schema.size());
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    FeatureVector v = extract_features(instances[i], schema, lexicons, tagger);
    for (std::size_t j = 0; j < schema.size(); ++j) m.at(i, j) = v.values[j];
  });
  return m;
}

struct CorpusData {
  LabeledCorpus corpus;
  Matrix features;
};

CorpusData load_and_extract(const RunConfig& cfg, const FeatureSchema& schema) {
  auto instances = load_instances(cfg.instances_path);
  auto truths = load_truth(cfg.truth_path);
  CorpusData data;
  data.corpus = join_corpus(instances, truths);
  std::vector<PostInstance> ordered;
  ordered.reserve(data.corpus.size());
  for (const auto& rec : data.corpus.records) ordered.push_back(rec.instance);
  data.features =
      extract_matrix(ordered, schema, builtin_lexicons(), load_tagger(cfg), cfg.jobs);
  return data;
}

ModelConfig model_config(const RunConfig& cfg) {
  ModelConfig mc;
  mc.kind = model_kind_from_string(cfg.model_kind);
  mc.trees = cfg.trees;
  mc.max_depth = cfg.max_depth;
  mc.top_k = cfg.top_k;
  mc.rank_on_full = cfg.rank_on_full;
  mc.threshold = cfg.threshold;
  return mc;
}

void print_effective_config(const RunConfig& cfg) {
  json j;
  j["instances"] = cfg.instances_path;
  j["truth"] = cfg.truth_path;
  j["schema"] = cfg.schema_path;
  j["tagger"] = cfg.tagger_path;
  j["model"] = cfg.model_path;
  j["out"] = cfg.out_path;
  j["model-kind"] = cfg.model_kind;
  j["trees"] = cfg.trees;
  j["max-depth"] = cfg.max_depth;
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["top-k"] = cfg.top_k;
  j["threshold"] = cfg.threshold;
  j["train-fraction"] = cfg.train_fraction;
  j["rank-on-full"] = cfg.rank_on_full;
  j["jobs"] = cfg.jobs;
  std::cout << j.dump(2) << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output: " + path);
  return out;
}

int cmd_extract(const RunConfig& cfg) {
  FeatureSchema schema = load_schema(cfg);
  auto instances = load_instances(cfg.instances_path);
  Matrix m = extract_matrix(instances, schema, builtin_lexicons(), load_tagger(cfg),
                            cfg.jobs);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file = open_out(cfg.out_path);
    out = &file;
  }
  *out << "id";
  for (const auto& e : schema.entries()) *out << "," << csv_quote(e.name);
  *out << "\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    *out << csv_quote(instances[i].id);
    for (std::size_t j = 0; j < schema.size(); ++j) *out << "," << fmt_score(m.at(i, j));
    *out << "\n";
  }
  return 0;
}

int cmd_rank(const RunConfig& cfg) {
  FeatureSchema schema = load_schema(cfg);
  CorpusData data = load_and_extract(cfg, schema);

  LabeledCorpus working = data.corpus;
  Matrix features = data.features;
  if (!cfg.rank_on_full && cfg.train_fraction < 1.0) {
    auto [train, test] = split_corpus(data.corpus, cfg.train_fraction, cfg.seed);
    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < data.corpus.size(); ++i)
      row_of[data.corpus.records[i].instance.id] = i;
    Matrix sub(train.size(), features.cols);
    for (std::size_t i = 0; i < train.size(); ++i) {
      std::size_t r = row_of.at(train.records[i].instance.id);
      for (std::size_t j = 0; j < features.cols; ++j) sub.at(i, j) = features.at(r, j);
    }
    working = std::move(train);
    features = std::move(sub);
  }

  std::vector<int> labels;
  labels.reserve(working.size());
  for (const auto& rec : working.records)
    labels.push_back(rec.truth.truth_class == TruthClass::clickbait ? 1 : 0);
  auto ranking = rank_features(features, labels, schema);
  if (cfg.out_path.empty()) {
    std::cout << "rank,feature,score\n";
    for (std::size_t i = 0; i < ranking.size(); ++i)
      std::cout << (i + 1) << "," << csv_quote(ranking[i].name) << "," << ranking[i].score
                << "\n";
  } else {
    save_ranking_csv(ranking, cfg.out_path);
  }
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  FeatureSchema schema = load_schema(cfg);
  CorpusData data = load_and_extract(cfg, schema);

  LabeledCorpus train = data.corpus;
  Matrix features = data.features;
  if (cfg.train_fraction < 1.0) {
    auto [tr, te] = split_corpus(data.corpus, cfg.train_fraction, cfg.seed);
    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < data.corpus.size(); ++i)
      row_of[data.corpus.records[i].instance.id] = i;
    Matrix sub(tr.size(), features.cols);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      std::size_t r = row_of.at(tr.records[i].instance.id);
      for (std::size_t j = 0; j < features.cols; ++j) sub.at(i, j) = features.at(r, j);
    }
    train = std::move(tr);
    features = std::move(sub);
  }

  std::vector<double> means;
  std::vector<int> classes;
  for (const auto& rec : train.records) {
    means.push_back(rec.truth.mean_score);
    classes.push_back(rec.truth.truth_class == TruthClass::clickbait ? 1 : 0);
  }
  Model model = train_model(features, means, classes, schema, model_config(cfg),
                            cfg.seed, cfg.jobs);
  model.schema_checksum = checksum_hex(schema.checksum());
  if (cfg.out_path.empty()) throw UsageError("train requires --out <model file>");
  model.save(cfg.out_path);
  return 0;
}

int cmd_predict(const RunConfig& cfg) {
  FeatureSchema schema = load_schema(cfg);
  Model model = Model::load(cfg.model_path);
  if (model.schema_checksum != checksum_hex(schema.checksum()))
    throw std::runtime_error("schema mismatch: model was trained against a different schema");

  auto instances = load_instances(cfg.instances_path);
  Matrix m = extract_matrix(instances, schema, builtin_lexicons(), load_tagger(cfg),
                            cfg.jobs);
  std::vector<std::size_t> columns;
  for (const auto& name : model.feature_names) {
    int idx = schema.index_of(name);
    if (idx < 0) throw std::runtime_error("schema mismatch: unknown feature " + name);
    columns.push_back(static_cast<std::size_t>(idx));
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file = open_out(cfg.out_path);
    out = &file;
  }
  std::vector<double> x(columns.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) x[c] = m.at(i, columns[c]);
    double score = model.predict_score(x);
    json line;
    line["id"] = instances[i].id;
    line["clickbaitScore"] = score;
    *out << line.dump() << "\n";
  }
  return 0;
}

json metrics_json(const Metrics& m) {
  json j;
  if (m.auc)
    j["auc"] = *m.auc;
  else
    j["auc"] = nullptr;
  j["mse"] = m.mse;
  j["acc"] = m.accuracy;
  j["f1"] = m.f1_clickbait;
  return j;
}

int cmd_evaluate(const RunConfig& cfg) {
  std::ifstream pred_in(cfg.predictions_path);
  if (!pred_in) throw std::runtime_error("file not found: " + cfg.predictions_path);
  std::unordered_map<std::string, double> score_of;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(pred_in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.contains("id") || !obj.contains("clickbaitScore"))
      throw std::runtime_error("predictions line " + std::to_string(line_no) +
                               ": expected {id, clickbaitScore}");
    score_of[obj["id"].get<std::string>()] = obj["clickbaitScore"].get<double>();
  }

  auto truths = load_truth(cfg.truth_path);
  std::vector<double> scores, means;
  std::vector<int> classes;
  std::vector<TruthRecord> matched;
  for (const auto& t : truths) {
    auto it = score_of.find(t.id);
    if (it == score_of.end())
      throw std::runtime_error("no prediction for id " + t.id);
    scores.push_back(it->second);
    means.push_back(t.mean_score);
    classes.push_back(t.truth_class == TruthClass::clickbait ? 1 : 0);
    matched.push_back(t);
  }
  Metrics m = compute_metrics(scores, means, classes, cfg.threshold);
  ErrorReport errors = error_report(scores, matched, cfg.threshold);

  json report;
  report["metrics"] = metrics_json(m);
  report["error_report"] = {{"misclassified", errors.misclassified_ids.size()},
                            {"fraction_mid_range", errors.fraction_mid_range},
                            {"q1", errors.q1},
                            {"median", errors.median},
                            {"q3", errors.q3}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_cv(const RunConfig& cfg) {
  if (cfg.k < 2) throw UsageError("cv requires --k >= 2");
  FeatureSchema schema = load_schema(cfg);
  CorpusData data = load_and_extract(cfg, schema);

  CvResult result = cross_validate(data.corpus, data.features, schema, model_config(cfg),
                                   cfg.k, cfg.seed, cfg.jobs);

  json report;
  report["model"] = cfg.model_kind;
  report["k"] = cfg.k;
  report["seed"] = cfg.seed;
  report["top_k"] = cfg.top_k;
  json folds = json::array();
  for (const auto& fr : result.folds) {
    json j = metrics_json(fr.metrics);
    j["fold"] = fr.fold;
    j["mse_vs_mean"] = fr.mse_vs_mean;
    j["mse_vs_binary"] = fr.mse_vs_binary;
    folds.push_back(j);
  }
  report["folds"] = folds;
  json mean = metrics_json(result.mean);
  mean["mse_vs_mean"] = result.mean_mse_vs_mean;
  mean["mse_vs_binary"] = result.mean_mse_vs_binary;
  report["mean"] = mean;
  report["error_report"] = {{"misclassified", result.errors.misclassified_ids.size()},
                            {"fraction_mid_range", result.errors.fraction_mid_range},
                            {"q1", result.errors.q1},
                            {"median", result.errors.median},
                            {"q3", result.errors.q3}};

  if (!cfg.out_path.empty()) {
    auto out = open_out(cfg.out_path);
    out << report.dump(2) << "\n";
    // prediction lines alongside the report when --predictions is given
  } else {
    std::cout << report.dump(2) << "\n";
  }
  if (!cfg.predictions_path.empty()) {
    auto out = open_out(cfg.predictions_path);
    for (const auto& [id, score] : result.predictions) {
      json line;
      line["id"] = id;
      line["clickbaitScore"] = score;
      out << line.dump() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clickbait post scoring pipeline"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (cfg.jobs <= 0) cfg.jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--schema", cfg.schema_path, "schema manifest (default: built-in)");
    sub->add_option("--tagger", cfg.tagger_path, "tagger weights file (default: built-in)");
    sub->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    sub->add_flag("--print-config", cfg.print_config, "print effective config and exit");
  };

  auto* extract = app.add_subcommand("extract", "write the feature matrix as CSV");
  extract->add_option("--instances", cfg.instances_path)->required();
  extract->add_option("--out", cfg.out_path, "output CSV (default: stdout)");
  add_common(extract);

  auto* rank = app.add_subcommand("rank", "rank features by Fisher score");
  rank->add_option("--instances", cfg.instances_path)->required();
  rank->add_option("--truth", cfg.truth_path)->required();
  rank->add_option("--train-fraction", cfg.train_fraction)->capture_default_str();
  rank->add_flag("--full", cfg.rank_on_full, "rank on the full corpus");
  rank->add_option("--out", cfg.out_path, "output CSV (default: stdout)");
  add_common(rank);

  auto* train = app.add_subcommand("train", "train and persist a model");
  train->add_option("--instances", cfg.instances_path)->required();
  train->add_option("--truth", cfg.truth_path)->required();
  train->add_option("--model-kind", cfg.model_kind, "linear|logistic|rf-reg|rf-clf")
      ->capture_default_str();
  train->add_option("--trees", cfg.trees)->capture_default_str();
  train->add_option("--max-depth", cfg.max_depth)->capture_default_str();
  train->add_option("--top-k", cfg.top_k, "Fisher top-k (0 = all features)")
      ->capture_default_str();
  train->add_option("--train-fraction", cfg.train_fraction)->capture_default_str();
  train->add_option("--threshold", cfg.threshold)->capture_default_str();
  train->add_option("--out", cfg.out_path, "model file")->required();
  add_common(train);

  auto* predict = app.add_subcommand("predict", "score instances with a trained model");
  predict->add_option("--instances", cfg.instances_path)->required();
  predict->add_option("--model", cfg.model_path)->required();
  predict->add_option("--out", cfg.out_path, "output JSONL (default: stdout)");
  add_common(predict);

  auto* evaluate = app.add_subcommand("evaluate", "score a prediction file against truth");
  evaluate->add_option("--predictions", cfg.predictions_path)->required();
  evaluate->add_option("--truth", cfg.truth_path)->required();
  evaluate->add_option("--threshold", cfg.threshold)->capture_default_str();
  add_common(evaluate);

  auto* cv = app.add_subcommand("cv", "k-fold cross-validation report");
  cv->add_option("--instances", cfg.instances_path)->required();
  cv->add_option("--truth", cfg.truth_path)->required();
  cv->add_option("--model-kind", cfg.model_kind)->capture_default_str();
  cv->add_option("--trees", cfg.trees)->capture_default_str();
  cv->add_option("--max-depth", cfg.max_depth)->capture_default_str();
  cv->add_option("--top-k", cfg.top_k, "Fisher top-k (0 = all features)")
      ->capture_default_str();
  cv->add_option("--k", cfg.k, "number of folds")->capture_default_str();
  cv->add_option("--threshold", cfg.threshold)->capture_default_str();
  cv->add_flag("--rank-on-full", cfg.rank_on_full, "Fisher ranking on the full corpus");
  cv->add_option("--out", cfg.out_path, "report file (default: stdout)");
  cv->add_option("--predictions", cfg.predictions_path, "write pooled held-out scores");
  add_common(cv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (cfg.jobs <= 0) cfg.jobs = 1;
  if (cfg.print_config) {
    print_effective_config(cfg);
    return 0;
  }

  try {
    if (extract->parsed()) return cmd_extract(cfg);
    if (rank->parsed()) return cmd_rank(cfg);
    if (train->parsed()) return cmd_train(cfg);
    if (predict->parsed()) return cmd_predict(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    if (cv->parsed()) return cmd_cv(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_io_message(e.what()) ? 2 : 1;
  }
  return 2;
}
