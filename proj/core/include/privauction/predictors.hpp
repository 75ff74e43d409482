//
// Copyright 2026 The privauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVAUCTION_PREDICTORS_HPP_
#define PRIVAUCTION_PREDICTORS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace privauction {

// Public feature rows Y (n x m, row-major) and the query profile y.
class FeatureSet {
 public:
  FeatureSet(std::vector<double> rows, std::size_t n, std::size_t m,
             std::vector<double> query);
  // Convenience for small literal matrices.
  FeatureSet(const std::vector<std::vector<double>>& rows,
             std::vector<double> query);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
  const std::vector<double>& data() const { return data_; }
  const std::vector<double>& query() const { return query_; }

 private:
  std::vector<double> data_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> query_;
};

struct GaussianKernel {
  // K(a, b) = exp(-|a - b|^2 / bandwidth^2).
  double bandwidth = 1.0;
};
struct LinearKernel {};
using Kernel = std::variant<GaussianKernel, LinearKernel>;

double kernel_value(const Kernel& kernel, const double* a, const double* b,
                    std::size_t m);

// 1/k on the k rows nearest to the query (Euclidean, ties to the smaller
// index), 0 elsewhere. Throws Error(kKOutOfRange) unless 1 <= k <= n.
std::vector<double> knn_weights(const FeatureSet& features, std::size_t k);

// K(y, y_i) / sum_j K(y, y_j). Throws Error(kDegenerateKernelMass) when the
// normalizer is zero or not finite.
std::vector<double> nadaraya_watson_weights(const FeatureSet& features,
                                            const Kernel& kernel);

// y^T (Y^T Y + lambda I)^{-1} Y^T via a Cholesky solve. Throws
// Error(kParameterOutOfRange) unless lambda > 0 and Error(kSingularSystem) if
// the factorization fails.
std::vector<double> ridge_weights(const FeatureSet& features, double lambda);

struct KernelRegressionResult {
  std::vector<double> weights;
  // Ratio of extreme eigenvalues of K + lambda I.
  double condition_number = 1.0;
  bool ill_conditioned = false;
};

inline constexpr double kIllConditionedThreshold = 1e12;

// (K(Y) + lambda I)^{-1} k(y, Y) via a Cholesky solve.
KernelRegressionResult kernel_regression_weights(const FeatureSet& features,
                                                 const Kernel& kernel,
                                                 double lambda);

inline constexpr double kDefaultDropThreshold = 1e-12;

// Weights with the exact and near zero entries removed. kept[j] is the
// original index of weights[j].
struct DroppedWeights {
  std::vector<double> weights;
  std::vector<std::size_t> kept;
  std::vector<std::size_t> dropped;
};

// Drops w_i when |w_i| <= threshold * sum |w_j| (always drops exact zeros).
DroppedWeights drop_negligible(const std::vector<double>& weights,
                               double threshold = kDefaultDropThreshold);

// Feature CSV: one row per individual, numeric columns. A header row is
// detected when its cells are not all numeric. With `id_column` the first
// column is skipped. Throws Error(kParse) naming the line.
struct FeatureTable {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> ids;
};

FeatureTable read_feature_csv(std::istream& in, bool id_column);
FeatureTable read_feature_csv_file(const std::filesystem::path& path,
                                   bool id_column);
// Comma separated list of numbers, e.g. "0.5,1,2".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace privauction

#endif  // PRIVAUCTION_PREDICTORS_HPP_
