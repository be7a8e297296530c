#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbdetect/select.hpp"

namespace cbdetect {

enum class ModelKind { linear, logistic, forest_regression, forest_classifier };

const char* to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct LinearModel {
  std::vector<double> weights;  // raw-feature space
  double intercept = 0.0;
};

struct LogisticConfig {
  double learning_rate = 0.1;
  int iterations = 500;
  double l2 = 1e-4;
};

struct LogisticModel {
  std::vector<double> weights;  // raw-feature space
  double intercept = 0.0;
  LogisticConfig config;
};

struct TreeConfig {
  int max_depth = 20;
  int min_samples_split = 2;
  int features_per_split = 0;  // 0 = all
  bool classification = false;
};

struct TreeNode {
  // leaf when feature < 0
  int feature = -1;
  double threshold = 0.0;
  double value = 0.0;  // mean target / positive-class fraction
  int left = -1;       // node indices within the tree
  int right = -1;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(const std::vector<double>& x) const;
};

struct ForestConfig {
  int n_trees = 400;
  int max_depth = 20;
  int features_per_split = 0;  // 0 = ceil(sqrt(d))
  bool bootstrap = true;
  bool classification = false;
};

struct Forest {
  std::vector<Tree> trees;
  ForestConfig config;
  std::uint64_t seed = 0;

  double predict(const std::vector<double>& x) const;  // mean of tree outputs
};

// Ridge-stabilized normal equations, lambda = 1e-6; features standardized
// internally, stored weights are in raw-feature space.
LinearModel fit_linear(const Matrix& X, const std::vector<double>& y);

// Full-batch gradient descent on l2-regularized log-loss, zero init.
LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y,
                           const LogisticConfig& config = {});

// Exposed for the gradient finite-difference oracle: gradient of the mean
// log-loss plus l2 term at `params` (params = [weights..., intercept]).
std::vector<double> logistic_gradient(const Matrix& X, const std::vector<int>& y,
                                      const std::vector<double>& params, double l2);
double logistic_loss(const Matrix& X, const std::vector<int>& y,
                     const std::vector<double>& params, double l2);

class SplitMix64;
Tree fit_tree(const Matrix& X, const std::vector<double>& y, const TreeConfig& config,
              SplitMix64& rng);

Forest fit_forest(const Matrix& X, const std::vector<double>& y,
                  const ForestConfig& config, std::uint64_t seed, int jobs = 1);

// A trained model of any of the four kinds plus the sub-schema it consumes.
struct Model {
  ModelKind kind = ModelKind::linear;
  std::vector<std::string> feature_names;  // order matches weight/tree indices
  std::string schema_checksum;             // of the full schema it was built from
  double threshold = 0.5;

  LinearModel linear;
  LogisticModel logistic;
  Forest forest;

  // Raw model output clipped to [0,1]; classifiers emit positive-class
  // probability.
  double predict_score(const std::vector<double>& x) const;
  TruthClass predict_class(const std::vector<double>& x, double threshold = 0.5) const;

  void save(const std::string& path) const;
  static Model load(const std::string& path);
};

}  // namespace cbdetect
