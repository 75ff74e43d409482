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

#include "privauction/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "privauction/error.hpp"

namespace privauction {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kValidation, what);
}

}  // namespace

ValueInterval::ValueInterval(double r_min, double r_max)
    : r_min_(r_min), r_max_(r_max) {
  if (!std::isfinite(r_min) || !std::isfinite(r_max)) {
    invalid("interval bounds must be finite");
  }
  if (!(r_min < r_max)) invalid("degenerate interval");
}

AuctionInstance::AuctionInstance(std::vector<double> weights,
                                 std::vector<double> unit_costs, double budget,
                                 ValueInterval interval)
    : weights_(std::move(weights)),
      unit_costs_(std::move(unit_costs)),
      budget_(budget),
      interval_(interval),
      total_weight_(0.0) {
  if (weights_.empty()) invalid("instance has no individuals");
  if (weights_.size() != unit_costs_.size()) {
    invalid("weights and unit_costs differ in length (" +
            std::to_string(weights_.size()) + " vs " +
            std::to_string(unit_costs_.size()) + ")");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      invalid("weight not finite at index " + std::to_string(i));
    }
    if (weights_[i] == 0.0) invalid("weight zero at index " + std::to_string(i));
    if (!std::isfinite(unit_costs_[i]) || unit_costs_[i] < 0.0) {
      invalid("unit cost negative or not finite at index " + std::to_string(i));
    }
    total_weight_ += std::fabs(weights_[i]);
  }
  if (!std::isfinite(budget_) || !(budget_ > 0.0)) {
    invalid("budget must be positive and finite");
  }
}

double AuctionInstance::abs_weight(std::size_t i) const {
  return std::fabs(weights_[i]);
}

std::vector<double> AuctionInstance::abs_weights() const {
  std::vector<double> out(weights_.size());
  std::transform(weights_.begin(), weights_.end(), out.begin(),
                 [](double w) { return std::fabs(w); });
  return out;
}

double AuctionInstance::weight_of(std::span<const std::size_t> subset) const {
  double sum = 0.0;
  for (std::size_t i : subset) sum += std::fabs(weights_.at(i));
  return sum;
}

bool AuctionInstance::is_canonical() const {
  return std::is_sorted(unit_costs_.begin(), unit_costs_.end());
}

AuctionInstance AuctionInstance::with_budget(double budget) const {
  return AuctionInstance(weights_, unit_costs_, budget, interval_);
}

AuctionInstance AuctionInstance::with_unit_costs(
    std::vector<double> unit_costs) const {
  return AuctionInstance(weights_, std::move(unit_costs), budget_, interval_);
}

AuctionInstance AuctionInstance::subset(
    std::span<const std::size_t> indices) const {
  std::vector<double> w;
  std::vector<double> v;
  w.reserve(indices.size());
  v.reserve(indices.size());
  for (std::size_t i : indices) {
    w.push_back(weights_.at(i));
    v.push_back(unit_costs_.at(i));
  }
  return AuctionInstance(std::move(w), std::move(v), budget_, interval_);
}

Database::Database(std::vector<double> entries, const ValueInterval& interval)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!interval.contains(entries_[i])) {
      invalid("database entry outside interval at index " + std::to_string(i));
    }
  }
}

Permutation::Permutation(std::vector<std::size_t> to_original)
    : to_original_(std::move(to_original)),
      to_canonical_(to_original_.size(), to_original_.size()) {
  for (std::size_t c = 0; c < to_original_.size(); ++c) {
    const std::size_t o = to_original_[c];
    if (o >= to_original_.size() || to_canonical_[o] != to_original_.size()) {
      invalid("permutation is not a bijection");
    }
    to_canonical_[o] = c;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return Permutation(std::move(ids));
}

bool Permutation::is_identity() const {
  for (std::size_t c = 0; c < to_original_.size(); ++c) {
    if (to_original_[c] != c) return false;
  }
  return true;
}

std::pair<AuctionInstance, Permutation> canonicalize(
    const AuctionInstance& instance) {
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& v = instance.unit_costs();
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  AuctionInstance sorted = instance.subset(order);
  return {std::move(sorted), Permutation(std::move(order))};
}

bool is_payable(double abs_weight, double unit_cost, double total_weight,
                double budget) {
  const double rest = total_weight - abs_weight;
  if (!(rest > 0.0)) return false;
  return abs_weight * unit_cost <= budget * rest;
}

FilterResult filter_payable(const AuctionInstance& instance, FilterMode mode) {
  std::vector<std::size_t> alive(instance.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  std::vector<std::size_t> removed;

  // Each pass removes every violator at once, so the outcome does not depend
  // on the order individuals are examined in.
  while (true) {
    const double total = instance.weight_of(alive);
    std::vector<std::size_t> next;
    next.reserve(alive.size());
    bool changed = false;
    for (std::size_t i : alive) {
      if (is_payable(instance.abs_weight(i), instance.unit_costs()[i], total,
                     instance.budget())) {
        next.push_back(i);
      } else {
        removed.push_back(i);
        changed = true;
      }
    }
    alive = std::move(next);
    if (!changed || mode == FilterMode::kOnce || alive.empty()) break;
  }

  if (alive.empty()) {
    throw Error(ErrorCode::kEmptyInstance,
                "no individual satisfies |w_i| v_i / (W - |w_i|) <= B");
  }
  std::sort(removed.begin(), removed.end());
  return FilterResult{instance.subset(alive), alive, removed};
}

}  // namespace privauction
