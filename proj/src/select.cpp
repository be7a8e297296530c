#include "cbdetect/select.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace cbdetect {

std::vector<double> fisher_scores(const Matrix& matrix, const std::vector<int>& labels) {
  const std::size_t n = matrix.rows;
  const std::size_t d = matrix.cols;
  if (labels.size() != n) throw std::runtime_error("fisher_scores: label/row mismatch");
  if (n < 2) throw std::runtime_error("fisher_scores: need at least 2 rows");

  std::size_t n1 = 0;
  for (int y : labels) n1 += (y != 0);
  std::size_t n0 = n - n1;
  if (n0 == 0 || n1 == 0)
    throw std::runtime_error("fisher_scores: both classes must be present");

  constexpr double kEps = 1e-12;
  std::vector<double> scores(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double sum0 = 0.0, sum1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      (labels[i] ? sum1 : sum0) += matrix.at(i, j);
    double mu0 = sum0 / static_cast<double>(n0);
    double mu1 = sum1 / static_cast<double>(n1);
    double mu = (sum0 + sum1) / static_cast<double>(n);

    double ss0 = 0.0, ss1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dev = matrix.at(i, j) - (labels[i] ? mu1 : mu0);
      (labels[i] ? ss1 : ss0) += dev * dev;
    }
    double var0 = n0 > 1 ? ss0 / static_cast<double>(n0 - 1) : 0.0;
    double var1 = n1 > 1 ? ss1 / static_cast<double>(n1 - 1) : 0.0;

    double num = static_cast<double>(n0) * (mu0 - mu) * (mu0 - mu) +
                 static_cast<double>(n1) * (mu1 - mu) * (mu1 - mu);
    double den = static_cast<double>(n0) * var0 + static_cast<double>(n1) * var1 + kEps;
    scores[j] = num / den;
  }
  return scores;
}

FeatureRanking rank_features(const Matrix& matrix, const std::vector<int>& labels,
                             const FeatureSchema& schema) {
  if (schema.size() != matrix.cols)
    throw std::runtime_error("rank_features: schema/column mismatch");
  auto scores = fisher_scores(matrix, labels);
  FeatureRanking ranking;
  ranking.reserve(scores.size());
  for (std::size_t j = 0; j < scores.size(); ++j)
    ranking.push_back({schema.at(j).name, j, scores[j]});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedFeature& a, const RankedFeature& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.schema_index < b.schema_index;
                   });
  return ranking;
}

std::vector<std::size_t> select_top_k(const FeatureRanking& ranking, std::size_t k) {
  if (k < 1 || k > ranking.size())
    throw std::runtime_error("select_top_k: k out of range");
  std::vector<std::size_t> indices;
  indices.reserve(k);
  for (std::size_t i = 0; i < k; ++i) indices.push_back(ranking[i].schema_index);
  std::sort(indices.begin(), indices.end());
  return indices;
}

namespace {
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
}  // namespace

void save_ranking_csv(const FeatureRanking& ranking, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write ranking: " + path);
  out << "rank,feature,score\n";
  for (std::size_t i = 0; i < ranking.size(); ++i)
    out << (i + 1) << "," << csv_quote(ranking[i].name) << "," << ranking[i].score << "\n";
}

}  // namespace cbdetect
