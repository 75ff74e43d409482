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
#include <cstdint>
#include <string>

#include "privauction/error.hpp"
#include "privauction/estimator.hpp"

namespace privauction {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "alpha must lie in (0,1)");
  }
}

// Heaviest subset with weight <= capacity; among equally heavy subsets the
// lexicographically smallest ascending index list wins.
class SubsetSumSearch {
 public:
  SubsetSumSearch(const std::vector<double>& abs_weights, double capacity)
      : weights_(abs_weights), capacity_(capacity) {
    suffix_.assign(weights_.size() + 1, 0.0);
    for (std::size_t k = weights_.size(); k-- > 0;) {
      suffix_[k] = suffix_[k + 1] + weights_[k];
    }
  }

  std::vector<std::size_t> run() {
    visit(0, 0.0);
    return best_;
  }

 private:
  void visit(std::size_t k, double weight) {
    if (weight + suffix_[k] < best_weight_) return;
    if (k == weights_.size()) {
      if (weight > best_weight_ ||
          (weight == best_weight_ &&
           std::lexicographical_compare(current_.begin(), current_.end(),
                                        best_.begin(), best_.end()))) {
        best_weight_ = weight;
        best_ = current_;
      }
      return;
    }
    if (weight + weights_[k] <= capacity_) {
      current_.push_back(k);
      visit(k + 1, weight + weights_[k]);
      current_.pop_back();
    }
    visit(k + 1, weight);
  }

  const std::vector<double>& weights_;
  double capacity_;
  std::vector<double> suffix_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_weight_ = -1.0;
};

// Reachability DP over weights rounded up to multiples of `unit`; rounding up
// keeps every reported subset within the true capacity.
std::vector<std::size_t> discretized_subset_sum(
    const std::vector<double>& abs_weights, double capacity, double unit) {
  const auto cap = static_cast<std::size_t>(std::floor(capacity / unit));
  std::vector<std::size_t> size(abs_weights.size());
  for (std::size_t i = 0; i < abs_weights.size(); ++i) {
    size[i] = static_cast<std::size_t>(std::ceil(abs_weights[i] / unit));
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(cap + 1, kNone);
  std::vector<bool> reach(cap + 1, false);
  reach[0] = true;
  for (std::size_t i = 0; i < size.size(); ++i) {
    if (size[i] > cap) continue;
    for (std::size_t s = cap; s >= size[i]; --s) {
      if (!reach[s] && reach[s - size[i]]) {
        reach[s] = true;
        via[s] = i;
      }
      if (s == 0) break;
    }
  }
  std::size_t s = cap;
  while (!reach[s]) --s;
  std::vector<std::size_t> chosen;
  while (s > 0) {
    const std::size_t i = via[s];
    chosen.push_back(i);
    s -= size[i];
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Dclef tradeoff_construct(std::span<const double> weights,
                         const ValueInterval& interval, double alpha) {
  check_alpha(alpha);
  std::vector<double> abs_weights(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    abs_weights[i] = std::fabs(weights[i]);
    total += abs_weights[i];
  }
  const double capacity = alpha * total;

  std::vector<std::size_t> unselected;
  if (weights.size() <= kMaxExactSubsetSumSize) {
    unselected = SubsetSumSearch(abs_weights, capacity).run();
  } else {
    unselected = discretized_subset_sum(abs_weights, capacity,
                                        total * kSubsetSumResolution);
  }
  std::vector<bool> selected(weights.size(), true);
  for (std::size_t i : unselected) selected[i] = false;
  return Dclef(std::vector<double>(weights.begin(), weights.end()), interval,
               std::move(selected));
}

Dclef tradeoff_construct(const AuctionInstance& instance, double alpha) {
  return tradeoff_construct(instance.weights(), instance.interval(), alpha);
}

TradeoffReport check_tradeoff_bound(const Dclef& dclef, double alpha) {
  check_alpha(alpha);
  const double scale = alpha * dclef.total_weight() * dclef.interval().delta();
  TradeoffReport report;
  report.distortion = distortion(dclef);
  report.distortion_threshold = scale * scale / 48.0;
  report.beta_bound = 2.0 * alpha * dclef.total_weight();
  if (report.distortion > report.distortion_threshold) {
    report.status = TradeoffStatus::kVacuous;
    return report;
  }
  report.beta = privacy_index_exact(dclef).beta;
  report.status = report.beta <= report.beta_bound ? TradeoffStatus::kHolds
                                                   : TradeoffStatus::kViolated;
  return report;
}

}  // namespace privauction
