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

#include "privauction/estimator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "privauction/error.hpp"
#include "privauction/laplace.hpp"

namespace privauction {
namespace {

void check_length(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has length " + std::to_string(actual) +
                    ", expected " + std::to_string(expected));
  }
}

void check_weights(const std::vector<double>& weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::kValidation, "estimator needs at least one weight");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] == 0.0) {
      throw Error(ErrorCode::kValidation,
                  "weight zero or not finite at index " + std::to_string(i));
    }
  }
}

}  // namespace

Lef::Lef(std::vector<double> weights, ValueInterval interval,
         std::vector<double> x, double sigma)
    : weights_(std::move(weights)),
      interval_(interval),
      x_(std::move(x)),
      sigma_(sigma) {
  check_weights(weights_);
  check_length(weights_.size(), x_.size(), "x");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] >= 0.0 && x_[i] <= 1.0)) {
      throw Error(ErrorCode::kValidation,
                  "x outside [0,1] at index " + std::to_string(i));
    }
  }
  if (!std::isfinite(sigma_) || sigma_ < 0.0) {
    throw Error(ErrorCode::kValidation, "sigma must be finite and >= 0");
  }
}

Lef Lef::from_instance(const AuctionInstance& instance, std::vector<double> x,
                       double sigma) {
  return Lef(instance.weights(), instance.interval(), std::move(x), sigma);
}

double Lef::residual_weight() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    sum += std::fabs(weights_[i]) * (1.0 - x_[i]);
  }
  return sum;
}

double Lef::total_weight() const {
  double sum = 0.0;
  for (double w : weights_) sum += std::fabs(w);
  return sum;
}

Dclef::Dclef(std::vector<double> weights, ValueInterval interval,
             std::vector<bool> selected)
    : weights_(std::move(weights)),
      interval_(interval),
      selected_(std::move(selected)) {
  check_weights(weights_);
  check_length(weights_.size(), selected_.size(), "selection");
}

Dclef Dclef::from_instance(const AuctionInstance& instance,
                           std::vector<bool> selected) {
  return Dclef(instance.weights(), instance.interval(), std::move(selected));
}

Dclef Dclef::from_selection(const AuctionInstance& instance,
                            std::span<const std::size_t> selected) {
  std::vector<bool> flags(instance.size(), false);
  for (std::size_t i : selected) flags.at(i) = true;
  return from_instance(instance, std::move(flags));
}

std::vector<std::size_t> Dclef::selected_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i]) out.push_back(i);
  }
  return out;
}

double Dclef::total_weight() const {
  double sum = 0.0;
  for (double w : weights_) sum += std::fabs(w);
  return sum;
}

double Dclef::selected_weight() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (selected_[i]) sum += std::fabs(weights_[i]);
  }
  return sum;
}

double Dclef::residual_weight() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!selected_[i]) sum += std::fabs(weights_[i]);
  }
  return sum;
}

Lef Dclef::to_lef() const {
  std::vector<double> x(selected_.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = selected_[i] ? 1.0 : 0.0;
  return Lef(weights_, interval_, std::move(x), sigma());
}

double deterministic_part(const Lef& lef, std::span<const double> database) {
  check_length(lef.size(), database.size(), "database");
  const double mid = lef.interval().midpoint();
  double value = 0.0;
  for (std::size_t i = 0; i < lef.size(); ++i) {
    const double w = lef.weights()[i];
    const double x = lef.x()[i];
    value += w * database[i] * x + mid * w * (1.0 - x);
  }
  return value;
}

double evaluate(const Lef& lef, const Database& database, std::uint64_t seed) {
  const double base = deterministic_part(lef, database.entries());
  Rng rng(seed);
  return base + sample_laplace(rng, lef.sigma());
}

EpsilonVector epsilons(const Lef& lef) {
  EpsilonVector out;
  out.values.resize(lef.size(), 0.0);
  const double delta = lef.interval().delta();
  for (std::size_t i = 0; i < lef.size(); ++i) {
    const double numerator = delta * std::fabs(lef.weights()[i]) * lef.x()[i];
    if (numerator == 0.0) continue;
    if (lef.sigma() == 0.0) {
      out.values[i] = std::numeric_limits<double>::infinity();
      out.unbounded = true;
    } else {
      out.values[i] = numerator / lef.sigma();
    }
  }
  return out;
}

EpsilonVector epsilons(const Dclef& dclef) {
  EpsilonVector out;
  out.values.resize(dclef.size(), 0.0);
  const double residual = dclef.residual_weight();
  for (std::size_t i = 0; i < dclef.size(); ++i) {
    if (!dclef.is_selected(i)) continue;
    if (residual == 0.0) {
      out.values[i] = std::numeric_limits<double>::infinity();
      out.unbounded = true;
    } else {
      out.values[i] = std::fabs(dclef.weights()[i]) / residual;
    }
  }
  return out;
}

double distortion(const Lef& lef) {
  const double bias = 0.5 * lef.interval().delta() * lef.residual_weight();
  return bias * bias + 2.0 * lef.sigma() * lef.sigma();
}

double distortion(const Dclef& dclef) {
  const double delta = dclef.interval().delta();
  const double gap = dclef.total_weight() - dclef.selected_weight();
  return 2.25 * delta * delta * gap * gap;
}

double distortion_with_offsets(const Lef& lef, std::span<const double> offsets) {
  check_length(lef.size(), offsets.size(), "offsets");
  const double lo = lef.interval().r_min();
  const double hi = lef.interval().r_max();
  // The bias sum_i gamma_i (d_i - a_i), gamma_i = w_i (1 - x_i), is linear in
  // d, so its extremes sit at the two sign-aligned corners.
  double upper = 0.0;
  double lower = 0.0;
  for (std::size_t i = 0; i < lef.size(); ++i) {
    const double gamma = lef.weights()[i] * (1.0 - lef.x()[i]);
    const double shift = gamma * offsets[i];
    if (gamma >= 0.0) {
      upper += gamma * hi - shift;
      lower += gamma * lo - shift;
    } else {
      upper += gamma * lo - shift;
      lower += gamma * hi - shift;
    }
  }
  const double worst = std::max(std::fabs(upper), std::fabs(lower));
  return worst * worst + 2.0 * lef.sigma() * lef.sigma();
}

double sensitivity(const Lef& lef, std::size_t i) {
  return lef.interval().delta() * std::fabs(lef.weights().at(i)) * lef.x().at(i);
}

double max_log_density_ratio(const Lef& lef, std::span<const double> d,
                             std::span<const double> d2) {
  if (!(lef.sigma() > 0.0)) {
    throw Error(ErrorCode::kValidation,
                "density ratio needs a strictly positive sigma");
  }
  // Both outputs are Laplace with the same scale; the log ratio
  // (|y - m2| - |y - m1|) / sigma is maximized once y is past both means.
  const double m1 = deterministic_part(lef, d);
  const double m2 = deterministic_part(lef, d2);
  return std::fabs(m1 - m2) / lef.sigma();
}

}  // namespace privauction
