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

#include "privauction/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "privauction/error.hpp"

namespace privauction {
namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const Matrix> design(const FeatureSet& f) {
  return Eigen::Map<const Matrix>(f.data().data(),
                                  static_cast<Eigen::Index>(f.rows()),
                                  static_cast<Eigen::Index>(f.cols()));
}

Eigen::Map<const Eigen::VectorXd> query(const FeatureSet& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.query().data(),
                                           static_cast<Eigen::Index>(f.cols()));
}

double squared_distance(const double* a, const double* b, std::size_t m) {
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kParameterOutOfRange, "lambda must be positive");
  }
}

void check_kernel(const Kernel& kernel) {
  if (const auto* g = std::get_if<GaussianKernel>(&kernel)) {
    if (!(g->bandwidth > 0.0) || !std::isfinite(g->bandwidth)) {
      throw Error(ErrorCode::kParameterOutOfRange, "bandwidth must be positive");
    }
  }
}

std::vector<double> to_vector(const Eigen::VectorXd& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace

FeatureSet::FeatureSet(std::vector<double> rows, std::size_t n, std::size_t m,
                       std::vector<double> query)
    : data_(std::move(rows)), n_(n), m_(m), query_(std::move(query)) {
  if (n_ == 0 || m_ == 0) {
    throw Error(ErrorCode::kValidation, "feature matrix must be non-empty");
  }
  if (data_.size() != n_ * m_) {
    throw Error(ErrorCode::kDimensionMismatch, "feature data is not n x m");
  }
  if (query_.size() != m_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query has " + std::to_string(query_.size()) + " entries, expected " +
                    std::to_string(m_));
  }
  for (double x : data_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kValidation, "non-finite feature");
  }
  for (double x : query_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kValidation, "non-finite query");
  }
}

FeatureSet::FeatureSet(const std::vector<std::vector<double>>& rows,
                       std::vector<double> query)
    : FeatureSet(
          [&rows] {
            std::vector<double> flat;
            for (const auto& r : rows) {
              if (r.size() != rows.front().size()) {
                throw Error(ErrorCode::kDimensionMismatch, "ragged feature rows");
              }
              flat.insert(flat.end(), r.begin(), r.end());
            }
            return flat;
          }(),
          rows.size(), rows.empty() ? 0 : rows.front().size(), std::move(query)) {}

double kernel_value(const Kernel& kernel, const double* a, const double* b,
                    std::size_t m) {
  if (const auto* g = std::get_if<GaussianKernel>(&kernel)) {
    return std::exp(-squared_distance(a, b, m) / (g->bandwidth * g->bandwidth));
  }
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) s += a[j] * b[j];
  return s;
}

std::vector<double> knn_weights(const FeatureSet& features, std::size_t k) {
  const std::size_t n = features.rows();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kKOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::size_t m = features.cols();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = squared_distance(&features.data()[i * m], features.query().data(), m);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&dist](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) w[order[j]] = 1.0 / static_cast<double>(k);
  return w;
}

std::vector<double> nadaraya_watson_weights(const FeatureSet& features,
                                            const Kernel& kernel) {
  check_kernel(kernel);
  const std::size_t n = features.rows();
  const std::size_t m = features.cols();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = kernel_value(kernel, &features.data()[i * m], features.query().data(), m);
    if (w[i] < 0.0) {
      throw Error(ErrorCode::kValidation,
                  "negative kernel value; Nadaraya-Watson needs a nonnegative kernel");
    }
  }
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw Error(ErrorCode::kDegenerateKernelMass, "kernel mass is zero at the query");
  }
  for (double& x : w) x /= mass;
  return w;
}

std::vector<double> ridge_weights(const FeatureSet& features, double lambda) {
  check_lambda(lambda);
  const auto y_mat = design(features);
  const Eigen::Index m = y_mat.cols();
  const Eigen::MatrixXd gram =
      y_mat.transpose() * y_mat + lambda * Eigen::MatrixXd::Identity(m, m);
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularSystem, "Y^T Y + lambda I is not positive definite");
  }
  // w = Y (Y^T Y + lambda I)^{-1} y, by symmetry of the Gram matrix.
  const Eigen::VectorXd b = llt.solve(Eigen::VectorXd(query(features)));
  return to_vector(y_mat * b);
}

KernelRegressionResult kernel_regression_weights(const FeatureSet& features,
                                                 const Kernel& kernel,
                                                 double lambda) {
  check_lambda(lambda);
  check_kernel(kernel);
  const std::size_t n = features.rows();
  const std::size_t m = features.cols();
  const double* rows = features.data().data();
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd kq(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double value = kernel_value(kernel, rows + i * m, rows + j * m, m);
      k(i, j) = value;
      k(j, i) = value;
    }
    kq(i) = kernel_value(kernel, rows + i * m, features.query().data(), m);
  }
  k.diagonal().array() += lambda;

  const Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularSystem,
                "K + lambda I is not positive definite; kernel not PSD on the data");
  }
  KernelRegressionResult out;
  out.weights = to_vector(llt.solve(kq));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  out.condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  out.ill_conditioned = out.condition_number > kIllConditionedThreshold;
  return out;
}

DroppedWeights drop_negligible(const std::vector<double>& weights,
                               double threshold) {
  double total = 0.0;
  for (double w : weights) total += std::fabs(w);
  DroppedWeights out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0 || std::fabs(weights[i]) <= threshold * total) {
      out.dropped.push_back(i);
    } else {
      out.weights.push_back(weights[i]);
      out.kept.push_back(i);
    }
  }
  return out;
}

}  // namespace privauction
