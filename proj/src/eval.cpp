#include "cbdetect/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cbdetect/prng.hpp"
#include "cbdetect/select.hpp"

namespace cbdetect {

Metrics compute_metrics(const std::vector<double>& scores,
                        const std::vector<double>& mean_targets,
                        const std::vector<int>& classes, double threshold) {
  const std::size_t n = scores.size();
  if (n == 0 || mean_targets.size() != n || classes.size() != n)
    throw std::runtime_error("compute_metrics: input size mismatch");
  for (int c : classes)
    if (c != 0 && c != 1) throw std::runtime_error("compute_metrics: class must be 0 or 1");

  Metrics m;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = scores[i] - mean_targets[i];
    sse += d * d;
  }
  m.mse = sse / static_cast<double>(n);

  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool pred = scores[i] >= threshold;
    bool truth = classes[i] != 0;
    if (pred && truth) ++tp;
    else if (pred && !truth) ++fp;
    else if (!pred && truth) ++fn;
    else ++tn;
  }
  m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(n);
  double precision = (tp + fp) ? static_cast<double>(tp) / (tp + fp) : 0.0;
  double recall = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
  m.f1_clickbait =
      (precision + recall > 0.0) ? 2.0 * precision * recall / (precision + recall) : 0.0;

  // Mann-Whitney AUC via midranks; ties contribute 1/2.
  std::size_t n_pos = tp + fn, n_neg = fp + tn;
  if (n_pos > 0 && n_neg > 0) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && scores[order[j]] == scores[order[i]]) ++j;
      double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
      for (std::size_t t = i; t < j; ++t)
        if (classes[order[t]] != 0) rank_sum_pos += midrank;
      i = j;
    }
    double u = rank_sum_pos - static_cast<double>(n_pos) * (n_pos + 1) / 2.0;
    m.auc = u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
  }
  return m;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::runtime_error("quantile: empty input");
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  double h = p * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ErrorReport error_report(const std::vector<double>& scores,
                         const std::vector<TruthRecord>& truths, double threshold) {
  if (scores.size() != truths.size())
    throw std::runtime_error("error_report: input size mismatch");
  ErrorReport report;
  std::vector<double> wrong_means;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    TruthClass pred =
        scores[i] >= threshold ? TruthClass::clickbait : TruthClass::no_clickbait;
    if (pred == truths[i].truth_class) continue;
    report.misclassified_ids.push_back(truths[i].id);
    wrong_means.push_back(truths[i].mean_score);
  }
  if (wrong_means.empty()) return report;

  std::size_t mid = 0;
  for (double v : wrong_means)
    if (v >= 0.33 && v <= 0.66) ++mid;
  report.fraction_mid_range = static_cast<double>(mid) / wrong_means.size();
  report.q1 = quantile(wrong_means, 0.25);
  report.median = quantile(wrong_means, 0.5);
  report.q3 = quantile(wrong_means, 0.75);
  return report;
}

Matrix select_columns(const Matrix& X, const std::vector<std::size_t>& columns) {
  Matrix out(X.rows, columns.size());
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c)
      out.at(i, c) = X.at(i, columns[c]);
  return out;
}

Model train_model(const Matrix& X, const std::vector<double>& mean_targets,
                  const std::vector<int>& classes, const FeatureSchema& schema,
                  const ModelConfig& config, std::uint64_t seed, int jobs) {
  std::vector<std::size_t> columns(schema.size());
  std::iota(columns.begin(), columns.end(), std::size_t{0});

  Matrix Xs = X;
  FeatureSchema sub = schema;
  if (config.top_k > 0 && config.top_k < schema.size()) {
    auto ranking = rank_features(X, classes, schema);
    columns = select_top_k(ranking, config.top_k);
    Xs = select_columns(X, columns);
    sub = schema.subset(columns);
  }

  Model model;
  model.kind = config.kind;
  model.threshold = config.threshold;
  for (const auto& e : sub.entries()) model.feature_names.push_back(e.name);

  switch (config.kind) {
    case ModelKind::linear:
      model.linear = fit_linear(Xs, mean_targets);
      break;
    case ModelKind::logistic:
      model.logistic = fit_logistic(Xs, classes, config.logistic);
      break;
    case ModelKind::forest_regression:
    case ModelKind::forest_classifier: {
      ForestConfig fc;
      fc.n_trees = config.trees;
      fc.max_depth = config.max_depth;
      fc.classification = config.kind == ModelKind::forest_classifier;
      std::vector<double> y;
      y.reserve(Xs.rows);
      if (fc.classification)
        for (int c : classes) y.push_back(c ? 1.0 : 0.0);
      else
        y = mean_targets;
      model.forest = fit_forest(Xs, y, fc, seed, jobs);
      break;
    }
  }
  return model;
}

CvResult cross_validate(const LabeledCorpus& corpus, const Matrix& features,
                        const FeatureSchema& schema, const ModelConfig& config, int k,
                        std::uint64_t seed, int jobs) {
  const std::size_t n = corpus.size();
  if (features.rows != n) throw std::runtime_error("cross_validate: matrix/corpus mismatch");
  FoldAssignment folds = make_folds(corpus, k, seed);

  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i)
    fold_of[i] = folds.assignment.at(corpus.records[i].instance.id);

  // Regression targets are the mean judgments; classifiers use the binary label.
  const bool classifier_mse_vs_binary =
      config.kind == ModelKind::logistic || config.kind == ModelKind::forest_classifier;

  CvResult result;
  std::vector<double> pooled_scores(n, 0.0);

  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < n; ++i)
      (fold_of[i] == f ? test_rows : train_rows).push_back(i);

    Matrix Xtr(train_rows.size(), features.cols);
    std::vector<double> ytr_mean(train_rows.size());
    std::vector<int> ytr_class(train_rows.size());
    for (std::size_t r = 0; r < train_rows.size(); ++r) {
      std::size_t i = train_rows[r];
      for (std::size_t j = 0; j < features.cols; ++j) Xtr.at(r, j) = features.at(i, j);
      ytr_mean[r] = corpus.records[i].truth.mean_score;
      ytr_class[r] = corpus.records[i].truth.truth_class == TruthClass::clickbait ? 1 : 0;
    }

    ModelConfig fold_config = config;
    if (config.rank_on_full && config.top_k > 0) {
      // Selection on the whole matrix, for reproducing full-data rankings.
      std::vector<int> all_classes(n);
      for (std::size_t i = 0; i < n; ++i)
        all_classes[i] =
            corpus.records[i].truth.truth_class == TruthClass::clickbait ? 1 : 0;
      auto ranking = rank_features(features, all_classes, schema);
      auto columns = select_top_k(ranking, config.top_k);
      Xtr = select_columns(Xtr, columns);
      // already projected; disable per-fold selection below
      fold_config.top_k = 0;
      Model model = train_model(Xtr, ytr_mean, ytr_class, schema.subset(columns),
                                fold_config, seed + static_cast<std::uint64_t>(f), jobs);
      for (std::size_t i : test_rows) {
        std::vector<double> x(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) x[c] = features.at(i, columns[c]);
        pooled_scores[i] = model.predict_score(x);
      }
    } else {
      Model model = train_model(Xtr, ytr_mean, ytr_class, schema, fold_config,
                                seed + static_cast<std::uint64_t>(f), jobs);
      // map model features back to full-schema columns
      std::vector<std::size_t> columns;
      columns.reserve(model.feature_names.size());
      for (const auto& name : model.feature_names) {
        int idx = schema.index_of(name);
        if (idx < 0) throw std::runtime_error("model feature missing from schema");
        columns.push_back(static_cast<std::size_t>(idx));
      }
      for (std::size_t i : test_rows) {
        std::vector<double> x(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) x[c] = features.at(i, columns[c]);
        pooled_scores[i] = model.predict_score(x);
      }
    }

    std::vector<double> fold_scores, fold_means, fold_binary;
    std::vector<int> fold_classes;
    for (std::size_t i : test_rows) {
      fold_scores.push_back(pooled_scores[i]);
      fold_means.push_back(corpus.records[i].truth.mean_score);
      int c = corpus.records[i].truth.truth_class == TruthClass::clickbait ? 1 : 0;
      fold_classes.push_back(c);
      fold_binary.push_back(c);
    }

    FoldResult fr;
    fr.fold = f;
    fr.metrics = compute_metrics(fold_scores, fold_means, fold_classes, config.threshold);
    fr.mse_vs_mean = fr.metrics.mse;
    {
      double sse = 0.0;
      for (std::size_t i = 0; i < fold_scores.size(); ++i) {
        double d = fold_scores[i] - fold_binary[i];
        sse += d * d;
      }
      fr.mse_vs_binary = sse / static_cast<double>(fold_scores.size());
    }
    if (classifier_mse_vs_binary) fr.metrics.mse = fr.mse_vs_binary;
    result.folds.push_back(fr);
  }

  // unweighted means across folds
  double auc_sum = 0.0;
  int auc_count = 0;
  for (const auto& fr : result.folds) {
    if (fr.metrics.auc) {
      auc_sum += *fr.metrics.auc;
      ++auc_count;
    }
    result.mean.mse += fr.metrics.mse;
    result.mean.accuracy += fr.metrics.accuracy;
    result.mean.f1_clickbait += fr.metrics.f1_clickbait;
    result.mean_mse_vs_mean += fr.mse_vs_mean;
    result.mean_mse_vs_binary += fr.mse_vs_binary;
  }
  double nk = static_cast<double>(result.folds.size());
  result.mean.mse /= nk;
  result.mean.accuracy /= nk;
  result.mean.f1_clickbait /= nk;
  result.mean_mse_vs_mean /= nk;
  result.mean_mse_vs_binary /= nk;
  if (auc_count > 0) result.mean.auc = auc_sum / auc_count;

  std::vector<TruthRecord> truths;
  truths.reserve(n);
  for (const auto& rec : corpus.records) truths.push_back(rec.truth);
  result.errors = error_report(pooled_scores, truths, config.threshold);
  for (std::size_t i = 0; i < n; ++i)
    result.predictions.emplace_back(corpus.records[i].instance.id, pooled_scores[i]);
  return result;
}

}  // namespace cbdetect
