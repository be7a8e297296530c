#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbdetect/corpus.hpp"
#include "cbdetect/learn.hpp"

namespace cbdetect {

struct Metrics {
  std::optional<double> auc;  // empty when only one class is present
  double mse = 0.0;           // against the mean-judgment targets passed in
  double accuracy = 0.0;
  double f1_clickbait = 0.0;
};

// classes: 1 = clickbait (positive), 0 = no-clickbait.
Metrics compute_metrics(const std::vector<double>& scores,
                        const std::vector<double>& mean_targets,
                        const std::vector<int>& classes, double threshold = 0.5);

struct ErrorReport {
  std::vector<std::string> misclassified_ids;
  double fraction_mid_range = 0.0;  // mean score in [0.33, 0.66]
  double q1 = 0.0, median = 0.0, q3 = 0.0;  // of misclassified mean scores
};

ErrorReport error_report(const std::vector<double>& scores,
                         const std::vector<TruthRecord>& truths,
                         double threshold = 0.5);

// Linear-interpolation quantile over a sorted copy of `values`.
double quantile(std::vector<double> values, double p);

struct ModelConfig {
  ModelKind kind = ModelKind::forest_regression;
  int trees = 400;
  int max_depth = 20;
  LogisticConfig logistic;
  std::size_t top_k = 0;     // 0 = no Fisher selection
  bool rank_on_full = false; // rank on the whole corpus instead of train folds
  double threshold = 0.5;
};

struct FoldResult {
  int fold = 0;
  Metrics metrics;
  double mse_vs_mean = 0.0;
  double mse_vs_binary = 0.0;
};

struct CvResult {
  std::vector<FoldResult> folds;
  Metrics mean;  // unweighted mean over folds
  double mean_mse_vs_mean = 0.0;
  double mean_mse_vs_binary = 0.0;
  ErrorReport errors;  // over the pooled held-out predictions
  // pooled held-out predictions, one entry per corpus record (by id)
  std::vector<std::pair<std::string, double>> predictions;
};

// Feature matrix rows must align with corpus.records.
CvResult cross_validate(const LabeledCorpus& corpus, const Matrix& features,
                        const FeatureSchema& schema, const ModelConfig& config, int k,
                        std::uint64_t seed, int jobs = 1);

// Shared by cv and the train command: Fisher selection (optional) + model fit.
Model train_model(const Matrix& X, const std::vector<double>& mean_targets,
                  const std::vector<int>& classes, const FeatureSchema& schema,
                  const ModelConfig& config, std::uint64_t seed, int jobs = 1);

Matrix select_columns(const Matrix& X, const std::vector<std::size_t>& columns);

}  // namespace cbdetect
