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

#ifndef PRIVAUCTION_ESTIMATOR_HPP_
#define PRIVAUCTION_ESTIMATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "privauction/instance.hpp"

namespace privauction {

// Laplace estimator of the linear predictor s(d) = sum_i w_i d_i:
//
//   s_hat(d) = sum_i w_i d_i x_i + R_mid * sum_i w_i (1 - x_i) + Lap(sigma)
//
// where R_mid is the interval midpoint and x_i in [0,1] controls how much the
// release depends on entry i.
class Lef {
 public:
  Lef(std::vector<double> weights, ValueInterval interval,
      std::vector<double> x, double sigma);
  static Lef from_instance(const AuctionInstance& instance,
                           std::vector<double> x, double sigma);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const ValueInterval& interval() const { return interval_; }
  const std::vector<double>& x() const { return x_; }
  double sigma() const { return sigma_; }

  // sum_i |w_i| (1 - x_i)
  double residual_weight() const;
  double total_weight() const;

 private:
  std::vector<double> weights_;
  ValueInterval interval_;
  std::vector<double> x_;
  double sigma_;
};

// Discrete canonical Laplace estimator: x_i in {0,1} and
// sigma = delta * sum_i |w_i| (1 - x_i). Fully determined by which
// individuals are selected (x_i = 1).
class Dclef {
 public:
  Dclef(std::vector<double> weights, ValueInterval interval,
        std::vector<bool> selected);
  static Dclef from_instance(const AuctionInstance& instance,
                             std::vector<bool> selected);
  static Dclef from_selection(const AuctionInstance& instance,
                              std::span<const std::size_t> selected);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const ValueInterval& interval() const { return interval_; }
  const std::vector<bool>& selected() const { return selected_; }
  bool is_selected(std::size_t i) const { return selected_[i]; }
  std::vector<std::size_t> selected_indices() const;

  double total_weight() const;
  double selected_weight() const;
  double residual_weight() const;
  double sigma() const { return interval_.delta() * residual_weight(); }

  Lef to_lef() const;

 private:
  std::vector<double> weights_;
  ValueInterval interval_;
  std::vector<bool> selected_;
};

// Per-individual privacy losses. When sigma is zero and some x_i > 0 the
// affected entries hold +infinity (never NaN) and `unbounded` is set.
struct EpsilonVector {
  std::vector<double> values;
  bool unbounded = false;
};

// Draws one release of the estimator on `database`. Deterministic for a
// fixed seed. A zero sigma adds no noise.
double evaluate(const Lef& lef, const Database& database, std::uint64_t seed);

// Noise-free part sum_i w_i d_i x_i + R_mid sum_i w_i (1 - x_i).
double deterministic_part(const Lef& lef, std::span<const double> database);

// epsilon_i = delta |w_i| x_i / sigma.
EpsilonVector epsilons(const Lef& lef);
// Canonical form |w_i| x_i / sum_j |w_j| (1 - x_j).
EpsilonVector epsilons(const Dclef& dclef);

// Worst-case mean squared error over all databases:
// (delta/2 * sum_i |w_i|(1 - x_i))^2 + 2 sigma^2.
double distortion(const Lef& lef);
// (9/4) delta^2 (W - sum_i |w_i| x_i)^2.
double distortion(const Dclef& dclef);

// Distortion of the wider family where entry i is interpolated towards an
// arbitrary constant offsets[i] instead of the midpoint. The maximum over
// databases is evaluated at the two extreme corners.
double distortion_with_offsets(const Lef& lef, std::span<const double> offsets);

// Sensitivity of the noise-free part to entry i: delta |w_i| x_i.
double sensitivity(const Lef& lef, std::size_t i);

// sup_y log(p_d(y) / p_d2(y)) for the two output densities, in closed form.
// Requires sigma > 0.
double max_log_density_ratio(const Lef& lef, std::span<const double> d,
                             std::span<const double> d2);

// ---------------------------------------------------------------------------
// Privacy index: the largest total |weight| of a group whose epsilons sum to
// strictly less than 1/2.

enum class PrivacyIndexMethod { kExact, kGreedy };

struct PrivacyIndexResult {
  double beta = 0.0;
  // Indices, ascending.
  std::vector<std::size_t> witness;
  PrivacyIndexMethod method = PrivacyIndexMethod::kExact;
};

inline constexpr std::size_t kMaxExactPrivacyIndexSize = 25;

// Exhaustive 0/1 knapsack with capacity 1/2 (strict). Throws
// Error(kInstanceTooLarge) above kMaxExactPrivacyIndexSize individuals.
PrivacyIndexResult privacy_index_exact(std::span<const double> weights,
                                       std::span<const double> epsilons);
PrivacyIndexResult privacy_index_exact(const Dclef& dclef);

// Greedy group H: individuals sorted by epsilon_i / |w_i|; take the longest
// prefix [h] with epsilon_j / |w_j| < 1 / (2 w([h])) for every j in it, or the
// single heaviest individual with epsilon < 1/2 when that one is heavier.
// For canonical discrete estimators 2 * beta_greedy >= beta_exact.
PrivacyIndexResult privacy_index_greedy(std::span<const double> weights,
                                        std::span<const double> epsilons);
PrivacyIndexResult privacy_index_greedy(const Dclef& dclef);

// ---------------------------------------------------------------------------
// Privacy/distortion trade-off.

inline constexpr std::size_t kMaxExactSubsetSumSize = 25;
inline constexpr double kSubsetSumResolution = 1e-6;

// Discrete canonical estimator whose unselected set H is a heaviest group
// with w(H) <= alpha W. Exact (ties towards the lexicographically smallest
// index list) up to kMaxExactSubsetSumSize individuals; above that, a dynamic
// program over weights rounded up to multiples of W * kSubsetSumResolution.
Dclef tradeoff_construct(std::span<const double> weights,
                         const ValueInterval& interval, double alpha);
Dclef tradeoff_construct(const AuctionInstance& instance, double alpha);

enum class TradeoffStatus { kHolds, kVacuous, kViolated };

struct TradeoffReport {
  TradeoffStatus status = TradeoffStatus::kVacuous;
  double distortion = 0.0;
  // (alpha W delta)^2 / 48
  double distortion_threshold = 0.0;
  // Exact privacy index; only computed when the premise holds.
  double beta = 0.0;
  // 2 alpha W
  double beta_bound = 0.0;
};

// If distortion <= (alpha W delta)^2 / 48 then beta <= 2 alpha W.
TradeoffReport check_tradeoff_bound(const Dclef& dclef, double alpha);

}  // namespace privauction

#endif  // PRIVAUCTION_ESTIMATOR_HPP_
