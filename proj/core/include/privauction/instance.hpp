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

#ifndef PRIVAUCTION_INSTANCE_HPP_
#define PRIVAUCTION_INSTANCE_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace privauction {

// Closed interval [r_min, r_max] that every private entry lies in.
class ValueInterval {
 public:
  ValueInterval(double r_min, double r_max);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double delta() const { return r_max_ - r_min_; }
  double midpoint() const { return 0.5 * (r_min_ + r_max_); }
  bool contains(double value) const {
    return value >= r_min_ && value <= r_max_;
  }

  friend bool operator==(const ValueInterval&, const ValueInterval&) = default;

 private:
  double r_min_;
  double r_max_;
};

// Complete input of a privacy auction: public weights, reported unit costs,
// the analyst's budget and the range of the private data. Immutable once
// constructed; every constructor path validates.
class AuctionInstance {
 public:
  AuctionInstance(std::vector<double> weights, std::vector<double> unit_costs,
                  double budget, ValueInterval interval);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& unit_costs() const { return unit_costs_; }
  double budget() const { return budget_; }
  const ValueInterval& interval() const { return interval_; }

  double abs_weight(std::size_t i) const;
  std::vector<double> abs_weights() const;
  // W = sum of |w_i|.
  double total_weight() const { return total_weight_; }
  // w(H) = sum of |w_i| over the given index subset.
  double weight_of(std::span<const std::size_t> subset) const;

  bool is_canonical() const;

  // Same instance with a different budget or cost vector.
  AuctionInstance with_budget(double budget) const;
  AuctionInstance with_unit_costs(std::vector<double> unit_costs) const;
  // Sub-instance restricted to `indices`, in the given order.
  AuctionInstance subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const AuctionInstance&,
                         const AuctionInstance&) = default;

 private:
  std::vector<double> weights_;
  std::vector<double> unit_costs_;
  double budget_;
  ValueInterval interval_;
  double total_weight_;
};

// Private data vector d, validated against the instance interval.
class Database {
 public:
  Database(std::vector<double> entries, const ValueInterval& interval);

  std::size_t size() const { return entries_.size(); }
  const std::vector<double>& entries() const { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

// Records the reordering applied by canonicalize(). Index `c` of the
// canonical instance corresponds to index `to_original(c)` of the input.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> to_original);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return to_original_.size(); }
  std::size_t to_original(std::size_t canonical) const {
    return to_original_[canonical];
  }
  std::size_t to_canonical(std::size_t original) const {
    return to_canonical_[original];
  }
  const std::vector<std::size_t>& forward() const { return to_original_; }
  bool is_identity() const;

  // Reorders a canonical-order vector back into original order.
  template <class T>
  std::vector<T> to_original_order(const std::vector<T>& canonical) const {
    std::vector<T> out(canonical.size());
    for (std::size_t c = 0; c < canonical.size(); ++c) {
      out[to_original_[c]] = canonical[c];
    }
    return out;
  }

 private:
  std::vector<std::size_t> to_original_;
  std::vector<std::size_t> to_canonical_;
};

// Stable sort by unit cost; ties keep the original index order.
std::pair<AuctionInstance, Permutation> canonicalize(
    const AuctionInstance& instance);

enum class FilterMode {
  // Check every individual once against the input W.
  kOnce,
  // Repeat with W recomputed over survivors until nobody is removed.
  kFixedPoint,
};

struct FilterResult {
  AuctionInstance instance;
  // Indices into the input instance, ascending.
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
};

// True when |w_i| v_i / (W - |w_i|) <= B. A zero denominator counts as a
// violation.
bool is_payable(double abs_weight, double unit_cost, double total_weight,
                double budget);

// Drops individuals who cannot be paid within budget by any discrete
// canonical estimator. Survivors keep their relative order. Throws
// Error(kEmptyInstance) when nobody survives.
FilterResult filter_payable(const AuctionInstance& instance,
                            FilterMode mode = FilterMode::kFixedPoint);

}  // namespace privauction

#endif  // PRIVAUCTION_INSTANCE_HPP_
