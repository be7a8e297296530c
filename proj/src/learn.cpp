#include "cbdetect/learn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cbdetect/parallel.hpp"
#include "cbdetect/prng.hpp"

namespace cbdetect {

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::linear: return "linear";
    case ModelKind::logistic: return "logistic";
    case ModelKind::forest_regression: return "rf-reg";
    case ModelKind::forest_classifier: return "rf-clf";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "linear") return ModelKind::linear;
  if (s == "logistic") return ModelKind::logistic;
  if (s == "rf-reg") return ModelKind::forest_regression;
  if (s == "rf-clf") return ModelKind::forest_classifier;
  throw std::runtime_error("unknown model kind \"" + s + "\"");
}

namespace {

constexpr double kStdFloor = 1e-9;

struct Standardizer {
  std::vector<double> mean, std;

  explicit Standardizer(const Matrix& X) {
    const std::size_t n = X.rows, d = X.cols;
    mean.assign(d, 0.0);
    std.assign(d, 1.0);
    if (n == 0) return;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += X.at(i, j);
      mean[j] = s / static_cast<double>(n);
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double dev = X.at(i, j) - mean[j];
        ss += dev * dev;
      }
      std[j] = std::max(std::sqrt(ss / static_cast<double>(n)), kStdFloor);
    }
  }

  Matrix transform(const Matrix& X) const {
    Matrix Z(X.rows, X.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
      for (std::size_t j = 0; j < X.cols; ++j)
        Z.at(i, j) = (X.at(i, j) - mean[j]) / std[j];
    return Z;
  }

  // Map standardized-space weights back to raw-feature space.
  void destandardize(const std::vector<double>& w_std, double b_std,
                     std::vector<double>& w_raw, double& b_raw) const {
    w_raw.resize(w_std.size());
    b_raw = b_std;
    for (std::size_t j = 0; j < w_std.size(); ++j) {
      w_raw[j] = w_std[j] / std[j];
      b_raw -= w_std[j] * mean[j] / std[j];
    }
  }
};

// Cholesky solve of A x = b for symmetric positive definite A (dense, d x d).
std::vector<double> cholesky_solve(std::vector<double> A, std::vector<double> b,
                                   std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    double diag = A[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= A[j * d + k] * A[j * d + k];
    if (diag <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
    diag = std::sqrt(diag);
    A[j * d + j] = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = A[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= A[i * d + k] * A[j * d + k];
      A[i * d + j] = v / diag;
    }
  }
  // forward substitution L y = b
  for (std::size_t i = 0; i < d; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= A[i * d + k] * b[k];
    b[i] = v / A[i * d + i];
  }
  // back substitution L^T x = y
  for (std::size_t ii = d; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t k = ii + 1; k < d; ++k) v -= A[k * d + ii] * b[k];
    b[ii] = v / A[ii * d + ii];
  }
  return b;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_dims(const Matrix& X, std::size_t n_targets) {
  if (X.rows != n_targets) throw std::runtime_error("row/target count mismatch");
}

}  // namespace

LinearModel fit_linear(const Matrix& X, const std::vector<double>& y) {
  check_dims(X, y.size());
  const std::size_t n = X.rows, d = X.cols;
  if (n < 1) throw std::runtime_error("fit_linear: empty input");

  Standardizer st(X);
  Matrix Z = st.transform(X);

  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  constexpr double kLambda = 1e-6;
  std::vector<double> A(d * d, 0.0), rhs(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double zij = Z.at(i, j);
      rhs[j] += zij * (y[i] - y_mean);
      for (std::size_t k = j; k < d; ++k) A[j * d + k] += zij * Z.at(i, k);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) A[j * d + k] = A[k * d + j];
    A[j * d + j] += kLambda;
  }
  std::vector<double> w_std = d ? cholesky_solve(std::move(A), std::move(rhs), d)
                                : std::vector<double>{};

  LinearModel model;
  st.destandardize(w_std, y_mean, model.weights, model.intercept);
  return model;
}

double logistic_loss(const Matrix& X, const std::vector<int>& y,
                     const std::vector<double>& params, double l2) {
  const std::size_t n = X.rows, d = X.cols;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = params[d];
    for (std::size_t j = 0; j < d; ++j) z += params[j] * X.at(i, j);
    // numerically stable log(1+exp)
    double lse = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    loss += lse - (y[i] ? z : 0.0);
  }
  loss /= static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) loss += 0.5 * l2 * params[j] * params[j];
  return loss;
}

std::vector<double> logistic_gradient(const Matrix& X, const std::vector<int>& y,
                                      const std::vector<double>& params, double l2) {
  const std::size_t n = X.rows, d = X.cols;
  std::vector<double> grad(d + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double z = params[d];
    for (std::size_t j = 0; j < d; ++j) z += params[j] * X.at(i, j);
    double err = sigmoid(z) - (y[i] ? 1.0 : 0.0);
    for (std::size_t j = 0; j < d; ++j) grad[j] += err * X.at(i, j);
    grad[d] += err;
  }
  for (double& g : grad) g /= static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) grad[j] += l2 * params[j];
  return grad;
}

LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y,
                           const LogisticConfig& config) {
  check_dims(X, y.size());
  const std::size_t d = X.cols;
  bool has0 = false, has1 = false;
  for (int v : y) (v ? has1 : has0) = true;
  if (!has0 || !has1)
    throw std::runtime_error("fit_logistic: both classes must be present");

  Standardizer st(X);
  Matrix Z = st.transform(X);

  std::vector<double> params(d + 1, 0.0);
  for (int it = 0; it < config.iterations; ++it) {
    auto grad = logistic_gradient(Z, y, params, config.l2);
    for (std::size_t j = 0; j <= d; ++j) params[j] -= config.learning_rate * grad[j];
  }

  LogisticModel model;
  model.config = config;
  std::vector<double> w_std(params.begin(), params.begin() + d);
  st.destandardize(w_std, params[d], model.weights, model.intercept);
  return model;
}

double Tree::predict(const std::vector<double>& x) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    const TreeNode& nd = nodes[node];
    node = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return nodes[node].value;
}

namespace {

struct TreeBuilder {
  const Matrix& X;
  const std::vector<double>& y;
  const TreeConfig& config;
  SplitMix64& rng;
  std::vector<TreeNode> nodes;

  double node_mean(const std::vector<std::size_t>& rows) const {
    double s = 0.0;
    for (std::size_t r : rows) s += y[r];
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
  }

  bool is_pure(const std::vector<std::size_t>& rows) const {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (y[rows[i]] != y[rows[0]]) return false;
    return true;
  }

  // Impurity sum for a child given count, sum and sum of squares.
  // Regression: SSE; classification: weighted Gini (y must be 0/1).
  double child_cost(double cnt, double sum, double sumsq) const {
    if (cnt <= 0.0) return 0.0;
    if (config.classification) {
      double p = sum / cnt;
      return cnt * 2.0 * p * (1.0 - p);
    }
    return sumsq - sum * sum / cnt;
  }

  std::vector<int> candidate_features() const {
    const int d = static_cast<int>(X.cols);
    int m = config.features_per_split;
    if (m <= 0 || m >= d) {
      std::vector<int> all(d);
      for (int j = 0; j < d; ++j) all[j] = j;
      return all;
    }
    // partial Fisher-Yates draw of m distinct feature indices
    std::vector<int> pool(d);
    for (int j = 0; j < d; ++j) pool[j] = j;
    std::vector<int> picked;
    picked.reserve(m);
    for (int i = 0; i < m; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.next_below(d - i));
      std::swap(pool[i], pool[j]);
      picked.push_back(pool[i]);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  int build(std::vector<std::size_t> rows, int depth) {
    int index = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[index].value = node_mean(rows);

    if (depth >= config.max_depth ||
        rows.size() < static_cast<std::size_t>(config.min_samples_split) ||
        is_pure(rows))
      return index;

    int best_feature = -1;
    double best_threshold = 0.0, best_cost = 0.0;
    bool have_best = false;

    std::vector<std::pair<double, double>> column(rows.size());  // (x, y)
    for (int j : candidate_features()) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        column[i] = {X.at(rows[i], j), y[rows[i]]};
      std::sort(column.begin(), column.end());

      double total_sum = 0.0, total_sumsq = 0.0;
      for (const auto& [xv, yv] : column) {
        total_sum += yv;
        total_sumsq += yv * yv;
      }
      double left_sum = 0.0, left_sumsq = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_sum += column[i].second;
        left_sumsq += column[i].second * column[i].second;
        if (column[i].first == column[i + 1].first) continue;
        double threshold = column[i].first + 0.5 * (column[i + 1].first - column[i].first);
        double nl = static_cast<double>(i + 1);
        double nr = static_cast<double>(column.size() - i - 1);
        double cost = child_cost(nl, left_sum, left_sumsq) +
                      child_cost(nr, total_sum - left_sum, total_sumsq - left_sumsq);
        if (!have_best || cost < best_cost - 1e-12) {
          have_best = true;
          best_cost = cost;
          best_feature = j;
          best_threshold = threshold;
        }
      }
    }
    if (!have_best) return index;  // no separating threshold among candidates

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows)
      (X.at(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
    if (left_rows.empty() || right_rows.empty()) return index;

    rows.clear();
    rows.shrink_to_fit();
    nodes[index].feature = best_feature;
    nodes[index].threshold = best_threshold;
    int left = build(std::move(left_rows), depth + 1);
    int right = build(std::move(right_rows), depth + 1);
    nodes[index].left = left;
    nodes[index].right = right;
    return index;
  }
};

}  // namespace

Tree fit_tree(const Matrix& X, const std::vector<double>& y, const TreeConfig& config,
              SplitMix64& rng) {
  check_dims(X, y.size());
  if (X.rows == 0) throw std::runtime_error("fit_tree: empty input");
  TreeBuilder builder{X, y, config, rng, {}};
  std::vector<std::size_t> rows(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) rows[i] = i;
  builder.build(std::move(rows), 0);
  Tree tree;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

double Forest::predict(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& t : trees) s += t.predict(x);
  return trees.empty() ? 0.0 : s / static_cast<double>(trees.size());
}

Forest fit_forest(const Matrix& X, const std::vector<double>& y,
                  const ForestConfig& config, std::uint64_t seed, int jobs) {
  check_dims(X, y.size());
  if (X.rows == 0) throw std::runtime_error("fit_forest: empty input");

  Forest forest;
  forest.config = config;
  forest.seed = seed;
  if (forest.config.features_per_split <= 0)
    forest.config.features_per_split =
        static_cast<int>(std::ceil(std::sqrt(static_cast<double>(X.cols))));

  // per-tree seeds drawn up front so tree training order does not matter
  SplitMix64 seeder(seed);
  std::vector<std::uint64_t> tree_seeds(config.n_trees);
  for (auto& s : tree_seeds) s = seeder.next();

  TreeConfig tree_config;
  tree_config.max_depth = forest.config.max_depth;
  tree_config.min_samples_split = 2;
  tree_config.features_per_split = forest.config.features_per_split;
  tree_config.classification = forest.config.classification;

  forest.trees.resize(config.n_trees);
  parallel_for(static_cast<std::size_t>(config.n_trees), jobs, [&](std::size_t t) {
    SplitMix64 rng(tree_seeds[t]);
    if (forest.config.bootstrap) {
      const std::size_t n = X.rows;
      Matrix Xb(n, X.cols);
      std::vector<double> yb(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = static_cast<std::size_t>(rng.next_below(n));
        for (std::size_t j = 0; j < X.cols; ++j) Xb.at(i, j) = X.at(r, j);
        yb[i] = y[r];
      }
      forest.trees[t] = fit_tree(Xb, yb, tree_config, rng);
    } else {
      forest.trees[t] = fit_tree(X, y, tree_config, rng);
    }
  });
  return forest;
}

double Model::predict_score(const std::vector<double>& x) const {
  if (x.size() != feature_names.size())
    throw std::runtime_error("predict: feature dimension mismatch");
  double raw = 0.0;
  switch (kind) {
    case ModelKind::linear: {
      raw = linear.intercept;
      for (std::size_t j = 0; j < x.size(); ++j) raw += linear.weights[j] * x[j];
      break;
    }
    case ModelKind::logistic: {
      double z = logistic.intercept;
      for (std::size_t j = 0; j < x.size(); ++j) z += logistic.weights[j] * x[j];
      raw = sigmoid(z);
      break;
    }
    case ModelKind::forest_regression:
    case ModelKind::forest_classifier:
      raw = forest.predict(x);
      break;
  }
  return std::clamp(raw, 0.0, 1.0);
}

TruthClass Model::predict_class(const std::vector<double>& x, double threshold) const {
  return predict_score(x) >= threshold ? TruthClass::clickbait : TruthClass::no_clickbait;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_weights(std::ostream& out, const std::vector<double>& w, double intercept) {
  out << "weights\t" << w.size() << "\n";
  for (double v : w) out << fmt_double(v) << "\n";
  out << "intercept\t" << fmt_double(intercept) << "\n";
}

std::pair<std::vector<double>, double> read_weights(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("weights\t", 0) != 0)
    throw std::runtime_error("model file: missing weights");
  std::size_t d = std::stoul(line.substr(8));
  std::vector<double> w(d);
  for (auto& v : w) {
    if (!std::getline(in, line)) throw std::runtime_error("model file: truncated weights");
    v = std::stod(line);
  }
  if (!std::getline(in, line) || line.rfind("intercept\t", 0) != 0)
    throw std::runtime_error("model file: missing intercept");
  return {std::move(w), std::stod(line.substr(10))};
}

}  // namespace

void Model::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << "cbdetect-model v1\n";
  out << "kind\t" << to_string(kind) << "\n";
  out << "schema_checksum\t" << schema_checksum << "\n";
  out << "threshold\t" << fmt_double(threshold) << "\n";
  out << "features\t" << feature_names.size() << "\n";
  for (const auto& name : feature_names) out << "f\t" << name << "\n";
  switch (kind) {
    case ModelKind::linear:
      write_weights(out, linear.weights, linear.intercept);
      break;
    case ModelKind::logistic:
      out << "config\t" << fmt_double(logistic.config.learning_rate) << "\t"
          << logistic.config.iterations << "\t" << fmt_double(logistic.config.l2) << "\n";
      write_weights(out, logistic.weights, logistic.intercept);
      break;
    case ModelKind::forest_regression:
    case ModelKind::forest_classifier: {
      out << "forest\t" << forest.trees.size() << "\t" << forest.config.max_depth << "\t"
          << forest.config.features_per_split << "\t" << (forest.config.bootstrap ? 1 : 0)
          << "\t" << forest.seed << "\n";
      for (const auto& tree : forest.trees) {
        out << "tree\t" << tree.nodes.size() << "\n";
        for (const auto& nd : tree.nodes)
          out << nd.feature << "\t" << fmt_double(nd.threshold) << "\t"
              << fmt_double(nd.value) << "\t" << nd.left << "\t" << nd.right << "\n";
      }
      break;
    }
  }
}

Model Model::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "cbdetect-model v1")
    throw std::runtime_error(path + ": not a cbdetect model file");

  Model model;
  auto expect = [&](const char* key) {
    if (!std::getline(in, line) || line.rfind(std::string(key) + "\t", 0) != 0)
      throw std::runtime_error(path + ": missing \"" + key + "\"");
    return line.substr(std::string(key).size() + 1);
  };
  model.kind = model_kind_from_string(expect("kind"));
  model.schema_checksum = expect("schema_checksum");
  model.threshold = std::stod(expect("threshold"));
  std::size_t n_features = std::stoul(expect("features"));
  for (std::size_t i = 0; i < n_features; ++i)
    model.feature_names.push_back(expect("f"));

  switch (model.kind) {
    case ModelKind::linear: {
      auto [w, b] = read_weights(in);
      model.linear = {std::move(w), b};
      break;
    }
    case ModelKind::logistic: {
      std::istringstream cfg(expect("config"));
      cfg >> model.logistic.config.learning_rate >> model.logistic.config.iterations >>
          model.logistic.config.l2;
      auto [w, b] = read_weights(in);
      model.logistic.weights = std::move(w);
      model.logistic.intercept = b;
      break;
    }
    case ModelKind::forest_regression:
    case ModelKind::forest_classifier: {
      std::istringstream hdr(expect("forest"));
      std::size_t n_trees = 0;
      int bootstrap = 0;
      hdr >> n_trees >> model.forest.config.max_depth >>
          model.forest.config.features_per_split >> bootstrap >> model.forest.seed;
      model.forest.config.bootstrap = bootstrap != 0;
      model.forest.config.n_trees = static_cast<int>(n_trees);
      model.forest.config.classification = model.kind == ModelKind::forest_classifier;
      for (std::size_t t = 0; t < n_trees; ++t) {
        std::size_t n_nodes = std::stoul(expect("tree"));
        Tree tree;
        tree.nodes.resize(n_nodes);
        for (auto& nd : tree.nodes) {
          if (!std::getline(in, line))
            throw std::runtime_error(path + ": truncated tree");
          std::istringstream ns(line);
          ns >> nd.feature >> nd.threshold >> nd.value >> nd.left >> nd.right;
        }
        model.forest.trees.push_back(std::move(tree));
      }
      break;
    }
  }
  // sanity check: parameter dimensions must match the embedded feature list
  const std::size_t d = model.feature_names.size();
  if (model.kind == ModelKind::linear && model.linear.weights.size() != d)
    throw std::runtime_error(path + ": weight count does not match feature list");
  if (model.kind == ModelKind::logistic && model.logistic.weights.size() != d)
    throw std::runtime_error(path + ": weight count does not match feature list");
  if (model.kind == ModelKind::forest_regression ||
      model.kind == ModelKind::forest_classifier) {
    for (const auto& tree : model.forest.trees)
      for (const auto& nd : tree.nodes)
        if (nd.feature >= static_cast<int>(d))
          throw std::runtime_error(path + ": tree references out-of-range feature");
  }
  return model;
}

}  // namespace cbdetect
