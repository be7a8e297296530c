#pragma once

#include <string>
#include <vector>

#include "cbdetect/features.hpp"

namespace cbdetect {

// Row-major dense matrix, n rows x d columns.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct RankedFeature {
  std::string name;
  std::size_t schema_index = 0;
  double score = 0.0;
};

// Sorted descending by score, ties broken by ascending schema index.
using FeatureRanking = std::vector<RankedFeature>;

// Two-class Fisher score per column:
//   F_j = [n0 (mu0 - mu)^2 + n1 (mu1 - mu)^2] / [n0 s0^2 + n1 s1^2 + eps]
// with sample variances (divisor n_c - 1, zero when n_c = 1) and eps = 1e-12.
std::vector<double> fisher_scores(const Matrix& matrix, const std::vector<int>& labels);

FeatureRanking rank_features(const Matrix& matrix, const std::vector<int>& labels,
                             const FeatureSchema& schema);

// Indices of the k best features, in ascending schema order.
std::vector<std::size_t> select_top_k(const FeatureRanking& ranking, std::size_t k);

void save_ranking_csv(const FeatureRanking& ranking, const std::string& path);

}  // namespace cbdetect
