#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "cbdetect/learn.hpp"
#include "cbdetect/prng.hpp"

using namespace cbdetect;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

double predict_linear(const LinearModel& m, const std::vector<double>& x) {
  double v = m.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) v += m.weights[j] * x[j];
  return v;
}

// Exhaustive best split over all features and all midpoints; returns the
// minimal total child SSE (regression).
double brute_force_best_cost(const Matrix& X, const std::vector<double>& y) {
  double best = -1.0;
  for (std::size_t j = 0; j < X.cols; ++j) {
    std::vector<double> values;
    for (std::size_t i = 0; i < X.rows; ++i) values.push_back(X.at(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      double threshold = (values[v] + values[v + 1]) / 2.0;
      std::vector<double> left, right;
      for (std::size_t i = 0; i < X.rows; ++i)
        (X.at(i, j) <= threshold ? left : right).push_back(y[i]);
      auto sse = [](const std::vector<double>& part) {
        if (part.empty()) return 0.0;
        double m = 0.0;
        for (double t : part) m += t;
        m /= static_cast<double>(part.size());
        double s = 0.0;
        for (double t : part) s += (t - m) * (t - m);
        return s;
      };
      double cost = sse(left) + sse(right);
      if (best < 0.0 || cost < best) best = cost;
    }
  }
  return best;
}

double node_cost_of_root(const Tree& tree, const Matrix& X, const std::vector<double>& y) {
  REQUIRE(tree.nodes[0].feature >= 0);
  int j = tree.nodes[0].feature;
  double threshold = tree.nodes[0].threshold;
  std::vector<double> left, right;
  for (std::size_t i = 0; i < X.rows; ++i)
    (X.at(i, j) <= threshold ? left : right).push_back(y[i]);
  auto sse = [](const std::vector<double>& part) {
    if (part.empty()) return 0.0;
    double m = 0.0;
    for (double t : part) m += t;
    m /= static_cast<double>(part.size());
    double s = 0.0;
    for (double t : part) s += (t - m) * (t - m);
    return s;
  };
  return sse(left) + sse(right);
}

}  // namespace

TEST_CASE("fit_linear recovers an exact line") {
  Matrix X = from_rows({{1}, {2}, {3}});
  auto model = fit_linear(X, {2, 4, 6});
  CHECK(model.weights[0] == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(model.intercept == doctest::Approx(0.0).scale(1).epsilon(1e-3));
}

TEST_CASE("fit_linear with constant target predicts the constant") {
  Matrix X = from_rows({{1, 7}, {2, 1}, {5, 0}, {3, 3}});
  auto model = fit_linear(X, {4.5, 4.5, 4.5, 4.5});
  for (std::size_t i = 0; i < X.rows; ++i) {
    std::vector<double> x = {X.at(i, 0), X.at(i, 1)};
    CHECK(predict_linear(model, x) == doctest::Approx(4.5).epsilon(1e-6));
  }
}

TEST_CASE("fit_linear survives duplicated columns") {
  Matrix X = from_rows({{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  auto model = fit_linear(X, {1, 2, 3, 4});
  for (double w : model.weights) CHECK(std::isfinite(w));
  CHECK(std::isfinite(model.intercept));
  CHECK(predict_linear(model, {2, 2}) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("fit_linear dimension mismatch") {
  Matrix X = from_rows({{1}, {2}});
  CHECK_THROWS_AS(fit_linear(X, {1.0, 2.0, 3.0}), std::runtime_error);
}

TEST_CASE("fit_logistic separable 1-D data ranks perfectly") {
  Matrix X = from_rows({{-3}, {-2}, {-1}, {1}, {2}, {3}});
  std::vector<int> y = {0, 0, 0, 1, 1, 1};
  auto model = fit_logistic(X, y);
  // all positive scores above all negative scores
  double max_neg = -1e9, min_pos = 1e9;
  for (std::size_t i = 0; i < X.rows; ++i) {
    double z = model.intercept + model.weights[0] * X.at(i, 0);
    if (y[i])
      min_pos = std::min(min_pos, z);
    else
      max_neg = std::max(max_neg, z);
  }
  CHECK(min_pos > max_neg);
}

TEST_CASE("fit_logistic constant feature, balanced labels -> 0.5") {
  Matrix X = from_rows({{2}, {2}, {2}, {2}});
  std::vector<int> y = {0, 1, 0, 1};
  auto model = fit_logistic(X, y);
  double z = model.intercept + model.weights[0] * 2.0;
  double p = 1.0 / (1.0 + std::exp(-z));
  CHECK(p == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fit_logistic rejects single-class input") {
  Matrix X = from_rows({{1}, {2}});
  CHECK_THROWS_AS(fit_logistic(X, {1, 1}), std::runtime_error);
}

TEST_CASE("logistic gradient matches central finite differences") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::size_t n = 12, d = 3;
  Matrix X(n, d);
  for (auto& v : X.data) v = unif(gen);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(gen() % 2);
  y[0] = 0;
  y[1] = 1;

  std::vector<double> params(d + 1);
  for (auto& p : params) p = unif(gen) * 0.5;
  const double l2 = 1e-4, h = 1e-5;

  auto grad = logistic_gradient(X, y, params, l2);
  for (std::size_t j = 0; j <= d; ++j) {
    auto plus = params, minus = params;
    plus[j] += h;
    minus[j] -= h;
    double fd = (logistic_loss(X, y, plus, l2) - logistic_loss(X, y, minus, l2)) / (2 * h);
    double rel = std::fabs(grad[j] - fd) / std::max(1e-8, std::fabs(fd));
    CHECK(rel < 1e-4);
  }
}

TEST_CASE("logistic loss is non-increasing over iterations") {
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::size_t n = 30, d = 2;
  Matrix X(n, d);
  for (auto& v : X.data) v = unif(gen);  // already roughly standardized
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = X.at(i, 0) + 0.3 * unif(gen) > 0 ? 1 : 0;
  y[0] = 0;
  y[1] = 1;

  LogisticConfig cfg;
  std::vector<double> params(d + 1, 0.0);
  double prev = logistic_loss(X, y, params, cfg.l2);
  for (int it = 0; it < 100; ++it) {
    auto grad = logistic_gradient(X, y, params, cfg.l2);
    for (std::size_t j = 0; j <= d; ++j) params[j] -= cfg.learning_rate * grad[j];
    double loss = logistic_loss(X, y, params, cfg.l2);
    CHECK(loss <= prev + 1e-12);
    prev = loss;
  }
}

TEST_CASE("fit_tree: constant target is a single leaf") {
  Matrix X = from_rows({{1}, {2}, {3}});
  SplitMix64 rng(1);
  auto tree = fit_tree(X, {5, 5, 5}, {}, rng);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].feature == -1);
  CHECK(tree.nodes[0].value == doctest::Approx(5.0));
}

TEST_CASE("fit_tree: clean binary split at 0.5") {
  Matrix X = from_rows({{0}, {0}, {1}, {1}});
  SplitMix64 rng(1);
  auto tree = fit_tree(X, {0, 0, 1, 1}, {}, rng);
  REQUIRE(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == doctest::Approx(0.5));
  CHECK(tree.predict({0.0}) == doctest::Approx(0.0));
  CHECK(tree.predict({1.0}) == doctest::Approx(1.0));
}

TEST_CASE("fit_tree: max_depth=0 yields the mean leaf") {
  Matrix X = from_rows({{0}, {1}, {2}, {3}});
  TreeConfig cfg;
  cfg.max_depth = 0;
  SplitMix64 rng(1);
  auto tree = fit_tree(X, {1, 2, 3, 4}, cfg, rng);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].value == doctest::Approx(2.5));
}

TEST_CASE("fit_tree root split matches exhaustive brute force") {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 4 + gen() % 9;  // up to 12
    std::size_t d = 1 + gen() % 3;
    Matrix X(n, d);
    for (auto& v : X.data) v = unif(gen);
    std::vector<double> y(n);
    for (auto& t : y) t = unif(gen);

    SplitMix64 rng(trial);
    auto tree = fit_tree(X, y, {}, rng);
    if (tree.nodes[0].feature < 0) continue;  // degenerate, nothing to compare
    double got = node_cost_of_root(tree, X, y);
    double want = brute_force_best_cost(X, y);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("deep tree reproduces training targets exactly") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t n = 20;
  Matrix X(n, 2);
  for (auto& v : X.data) v = unif(gen);  // continuous features, no duplicate rows
  std::vector<double> y(n);
  for (auto& t : y) t = unif(gen);

  TreeConfig cfg;
  cfg.max_depth = 64;
  SplitMix64 rng(3);
  auto tree = fit_tree(X, y, cfg, rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = {X.at(i, 0), X.at(i, 1)};
    CHECK(tree.predict(x) == doctest::Approx(y[i]).epsilon(1e-12));
  }
}

TEST_CASE("forest with one tree, no bootstrap, all features equals fit_tree") {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t n = 25;
  Matrix X(n, 3);
  for (auto& v : X.data) v = unif(gen);
  std::vector<double> y(n);
  for (auto& t : y) t = unif(gen);

  ForestConfig fc;
  fc.n_trees = 1;
  fc.bootstrap = false;
  fc.features_per_split = 3;
  fc.max_depth = 20;
  auto forest = fit_forest(X, y, fc, 42);

  SplitMix64 rng_seed(42);
  SplitMix64 tree_rng(rng_seed.next());  // the forest derives the tree seed this way
  TreeConfig tc;
  tc.max_depth = 20;
  tc.features_per_split = 3;
  auto tree = fit_tree(X, y, tc, tree_rng);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x = {unif(gen), unif(gen), unif(gen)};
    CHECK(forest.predict(x) == doctest::Approx(tree.predict(x)).epsilon(1e-12));
  }
}

TEST_CASE("forest regression output stays within the target range") {
  std::mt19937 gen(15);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t n = 30;
  Matrix X(n, 2);
  for (auto& v : X.data) v = unif(gen);
  std::vector<double> y(n);
  for (auto& t : y) t = 0.2 + 0.6 * unif(gen);

  ForestConfig fc;
  fc.n_trees = 10;
  auto forest = fit_forest(X, y, fc, 7);
  double lo = *std::min_element(y.begin(), y.end());
  double hi = *std::max_element(y.begin(), y.end());
  for (int trial = 0; trial < 50; ++trial) {
    double p = forest.predict({unif(gen) * 2 - 0.5, unif(gen) * 2 - 0.5});
    CHECK(p >= lo);
    CHECK(p <= hi);
  }
}

TEST_CASE("forest prediction is the mean of its trees") {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix X(15, 2);
  for (auto& v : X.data) v = unif(gen);
  std::vector<double> y(15);
  for (auto& t : y) t = unif(gen);

  ForestConfig fc;
  fc.n_trees = 7;
  auto forest = fit_forest(X, y, fc, 3);
  std::vector<double> x = {0.4, 0.6};
  double mean = 0.0;
  for (const auto& tree : forest.trees) mean += tree.predict(x);
  mean /= static_cast<double>(forest.trees.size());
  CHECK(forest.predict(x) == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("same seed gives byte-identical serialized forests; parallel too") {
  std::mt19937 gen(33);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix X(40, 4);
  for (auto& v : X.data) v = unif(gen);
  std::vector<double> y(40);
  for (auto& t : y) t = unif(gen);

  ForestConfig fc;
  fc.n_trees = 12;
  auto save_forest = [](const Forest& forest) {
    Model m;
    m.kind = ModelKind::forest_regression;
    m.feature_names = {"a", "b", "c", "d"};
    m.schema_checksum = "0";
    m.forest = forest;
    std::string path = "forest_determinism_test.model";
    m.save(path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    std::remove(path.c_str());
    return bytes;
  };
  auto a = save_forest(fit_forest(X, y, fc, 42, 1));
  auto b = save_forest(fit_forest(X, y, fc, 42, 4));
  auto c = save_forest(fit_forest(X, y, fc, 43, 1));
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("predict_score clipping and ranges") {
  Model m;
  m.kind = ModelKind::linear;
  m.feature_names = {"x"};
  m.linear.weights = {1.0};
  m.linear.intercept = 0.3;
  CHECK(m.predict_score({1.0}) == doctest::Approx(1.0));   // 1.3 clipped
  CHECK(m.predict_score({-9.0}) == doctest::Approx(0.0));  // negative clipped
  CHECK(m.predict_score({0.2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(m.predict_score({0.1, 0.2}), std::runtime_error);

  CHECK(m.predict_class({0.2}) == TruthClass::clickbait);       // 0.5 >= 0.5
  CHECK(m.predict_class({0.18}) == TruthClass::no_clickbait);   // 0.48
  CHECK(m.predict_class({-9.0}, 0.0) == TruthClass::clickbait); // threshold 0
}

TEST_CASE("logistic model scores stay strictly inside (0,1)") {
  Model m;
  m.kind = ModelKind::logistic;
  m.feature_names = {"x"};
  m.logistic.weights = {3.0};
  m.logistic.intercept = -1.0;
  for (double x : {-100.0, -1.0, 0.0, 1.0, 100.0}) {
    double s = m.predict_score({x});
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
  CHECK(m.predict_score({0.0}) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))));
}

TEST_CASE("model save/load round trip for every kind") {
  std::mt19937 gen(55);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix X(20, 3);
  for (auto& v : X.data) v = unif(gen);
  std::vector<double> ym(20);
  std::vector<int> yc(20);
  for (std::size_t i = 0; i < 20; ++i) {
    ym[i] = unif(gen);
    yc[i] = static_cast<int>(i % 2);
  }

  std::string path = "roundtrip_test.model";
  auto roundtrip = [&](Model m) {
    m.feature_names = {"a", "b", "c"};
    m.schema_checksum = "deadbeefdeadbeef";
    m.save(path);
    Model loaded = Model::load(path);
    CHECK(loaded.kind == m.kind);
    CHECK(loaded.feature_names == m.feature_names);
    CHECK(loaded.schema_checksum == m.schema_checksum);
    std::vector<double> x = {0.1, 0.9, 0.4};
    CHECK(loaded.predict_score(x) == doctest::Approx(m.predict_score(x)).epsilon(1e-15));
  };

  Model lin;
  lin.kind = ModelKind::linear;
  lin.linear = fit_linear(X, ym);
  roundtrip(lin);

  Model logi;
  logi.kind = ModelKind::logistic;
  logi.logistic = fit_logistic(X, yc);
  roundtrip(logi);

  Model rf;
  rf.kind = ModelKind::forest_regression;
  ForestConfig fc;
  fc.n_trees = 5;
  rf.forest = fit_forest(X, ym, fc, 9);
  roundtrip(rf);

  Model rfc;
  rfc.kind = ModelKind::forest_classifier;
  ForestConfig fcc;
  fcc.n_trees = 5;
  fcc.classification = true;
  std::vector<double> ybin(yc.begin(), yc.end());
  rfc.forest = fit_forest(X, ybin, fcc, 9);
  roundtrip(rfc);

  std::remove(path.c_str());
}
