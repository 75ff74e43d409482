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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "privauction/error.hpp"
#include "privauction/estimator.hpp"

namespace privauction {
namespace {

constexpr double kCapacity = 0.5;

void check_inputs(std::span<const double> weights,
                  std::span<const double> epsilons) {
  if (weights.size() != epsilons.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weights and epsilons differ in length");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (std::isnan(epsilons[i]) || epsilons[i] < 0.0) {
      throw Error(ErrorCode::kValidation,
                  "epsilon negative or NaN at index " + std::to_string(i));
    }
  }
}

// Depth-first include/exclude search over the items with positive epsilon.
// Sums are accumulated in index order so the reported witness satisfies the
// strict capacity test with exactly the arithmetic used here.
class KnapsackSearch {
 public:
  KnapsackSearch(std::span<const double> weights,
                 std::span<const double> epsilons,
                 std::vector<std::size_t> items)
      : weights_(weights), epsilons_(epsilons), items_(std::move(items)) {
    suffix_weight_.assign(items_.size() + 1, 0.0);
    for (std::size_t k = items_.size(); k-- > 0;) {
      suffix_weight_[k] =
          suffix_weight_[k + 1] + std::fabs(weights_[items_[k]]);
    }
  }

  void run() { visit(0, 0.0, 0.0); }

  double best_weight() const { return best_weight_; }
  const std::vector<std::size_t>& best() const { return best_; }

 private:
  void visit(std::size_t k, double eps_sum, double weight) {
    if (weight + suffix_weight_[k] <= best_weight_) return;
    if (k == items_.size()) {
      best_weight_ = weight;
      best_ = current_;
      return;
    }
    const std::size_t item = items_[k];
    const double with = eps_sum + epsilons_[item];
    if (with < kCapacity) {
      current_.push_back(item);
      visit(k + 1, with, weight + std::fabs(weights_[item]));
      current_.pop_back();
    }
    visit(k + 1, eps_sum, weight);
  }

  std::span<const double> weights_;
  std::span<const double> epsilons_;
  std::vector<std::size_t> items_;
  std::vector<double> suffix_weight_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_weight_ = -1.0;
};

}  // namespace

PrivacyIndexResult privacy_index_exact(std::span<const double> weights,
                                       std::span<const double> epsilons) {
  check_inputs(weights, epsilons);
  if (weights.size() > kMaxExactPrivacyIndexSize) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exact privacy index limited to " +
                    std::to_string(kMaxExactPrivacyIndexSize) +
                    " individuals");
  }
  // Zero-epsilon individuals never consume capacity, so they belong to every
  // maximal group.
  std::vector<std::size_t> free_items;
  std::vector<std::size_t> priced;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    (epsilons[i] == 0.0 ? free_items : priced).push_back(i);
  }
  KnapsackSearch search(weights, epsilons, priced);
  search.run();

  PrivacyIndexResult result;
  result.method = PrivacyIndexMethod::kExact;
  result.witness = free_items;
  result.witness.insert(result.witness.end(), search.best().begin(),
                        search.best().end());
  std::sort(result.witness.begin(), result.witness.end());
  for (std::size_t i : result.witness) result.beta += std::fabs(weights[i]);
  return result;
}

PrivacyIndexResult privacy_index_exact(const Dclef& dclef) {
  const EpsilonVector eps = epsilons(dclef);
  return privacy_index_exact(dclef.weights(), eps.values);
}

PrivacyIndexResult privacy_index_greedy(std::span<const double> weights,
                                        std::span<const double> epsilons) {
  check_inputs(weights, epsilons);
  const std::size_t n = weights.size();
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) {
    ratio[i] = epsilons[i] / std::fabs(weights[i]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&ratio](std::size_t a,
                                                        std::size_t b) {
    return ratio[a] < ratio[b];
  });

  // h = max{ j : ratio_(j) < 1 / (2 w([j])) }, 0 when the first item fails.
  std::size_t h = 0;
  double prefix = 0.0;
  double prefix_at_h = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prefix += std::fabs(weights[order[j]]);
    if (ratio[order[j]] < 1.0 / (2.0 * prefix)) {
      h = j + 1;
      prefix_at_h = prefix;
    } else if (j == 0) {
      break;
    }
  }

  // Heaviest single individual that fits alone; ties to the smallest index.
  std::size_t heaviest = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (epsilons[i] < kCapacity &&
        (heaviest == n || std::fabs(weights[i]) > std::fabs(weights[heaviest]))) {
      heaviest = i;
    }
  }

  PrivacyIndexResult result;
  result.method = PrivacyIndexMethod::kGreedy;
  if (heaviest == n || prefix_at_h >= std::fabs(weights[heaviest])) {
    result.witness.assign(order.begin(), order.begin() + h);
    std::sort(result.witness.begin(), result.witness.end());
    result.beta = prefix_at_h;
  } else {
    result.witness = {heaviest};
    result.beta = std::fabs(weights[heaviest]);
  }
  return result;
}

PrivacyIndexResult privacy_index_greedy(const Dclef& dclef) {
  const EpsilonVector eps = epsilons(dclef);
  return privacy_index_greedy(dclef.weights(), eps.values);
}

}  // namespace privauction
