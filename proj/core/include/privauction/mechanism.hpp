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

#ifndef PRIVAUCTION_MECHANISM_HPP_
#define PRIVAUCTION_MECHANISM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privauction/estimator.hpp"
#include "privauction/instance.hpp"
#include "privauction/rational.hpp"

namespace privauction {

enum class Branch {
  // Only the heaviest individual i* is selected and paid p_hat.
  kStar,
  // The k cheapest individuals are selected and paid in proportion to |w_i|.
  kTopK,
};

std::string to_string(Branch branch);

// Deliberately broken variants of the mechanism. The default value is the
// reference mechanism; the others exist so the verification sweeps can show
// that they catch each kind of mistake.
struct MechanismVariant {
  // Every payment multiplied by num / den.
  std::int64_t payment_scale_num = 1;
  std::int64_t payment_scale_den = 1;
  // Uses k + 1 (capped at n - 1) in place of k.
  bool k_off_by_one = false;
  // Tests |w_i*| >= w([k] \ {i*}) instead of the strict inequality.
  bool star_non_strict = false;
  // Drops the v_{k+1} / (W - w([k])) cap from the top-k payment rate.
  bool drop_next_cost_cap = false;

  bool is_reference() const {
    return payment_scale_num == payment_scale_den && !k_off_by_one &&
           !star_non_strict && !drop_next_cost_cap;
  }
};

// Parses "payment-scale:<decimal>", "k-off-by-one", "star-non-strict" or
// "drop-next-cost-cap". Throws Error(kValidation) on anything else.
MechanismVariant parse_mutation(const std::string& spec);

// Mechanism output in the arithmetic it was computed in. Indices refer to
// the canonical (cost-sorted) order and are 0-based.
template <class Scalar>
struct Allocation {
  std::vector<std::size_t> selected;
  std::vector<Scalar> payments;
  // Number of individuals passing the top-k threshold test (at least 1).
  std::size_t k = 0;
  std::size_t i_star = 0;
  Branch branch = Branch::kTopK;
  // First threshold position in the i*-less instance; Star branch only.
  std::optional<std::size_t> r;
  std::optional<Scalar> p_hat;
};

// FairInnerProduct on magnitudes |w_i|, costs v_i (non-decreasing) and budget
// B. Works for double and for exact Rational arithmetic. Throws
// Error(kEmptyInstance) for fewer than two individuals, Error(kNotCanonical)
// for unsorted costs and Error(kAssumptionViolated) when some individual
// cannot be paid within budget.
//
// Ties for i* go to the smallest `input_index` (the position before cost
// sorting); an empty span means canonical position.
template <class Scalar>
Allocation<Scalar> allocate(std::span<const Scalar> abs_weights,
                            std::span<const Scalar> unit_costs,
                            const Scalar& budget,
                            const MechanismVariant& variant = {},
                            std::span<const std::size_t> input_index = {});

extern template Allocation<double> allocate<double>(
    std::span<const double>, std::span<const double>, const double&,
    const MechanismVariant&, std::span<const std::size_t>);
extern template Allocation<Rational> allocate<Rational>(
    std::span<const Rational>, std::span<const Rational>, const Rational&,
    const MechanismVariant&, std::span<const std::size_t>);

// Canonical privacy loss of each individual for a selected set:
// |w_i| / sum_{j not selected} |w_j| if selected, else 0. Requires at least
// one unselected individual.
template <class Scalar>
std::vector<Scalar> selection_epsilons(std::span<const Scalar> abs_weights,
                                       std::span<const std::size_t> selected);

extern template std::vector<double> selection_epsilons<double>(
    std::span<const double>, std::span<const std::size_t>);
extern template std::vector<Rational> selection_epsilons<Rational>(
    std::span<const Rational>, std::span<const std::size_t>);

struct MechanismDiagnostics {
  std::size_t k = 0;
  std::size_t i_star = 0;
  Branch branch = Branch::kTopK;
  std::optional<std::size_t> r;
  std::optional<double> p_hat;
};

struct MechanismOutcome {
  // Canonical indices, ascending.
  std::vector<std::size_t> selected;
  std::vector<double> payments;
  Dclef dclef;
  MechanismDiagnostics diagnostics;

  // S(x; w) = sum of |w_i| over the selected set.
  double objective() const { return dclef.selected_weight(); }
  double total_payment() const;
};

// Runs the mechanism on a canonical, payability-filtered instance.
// `input_index` as for allocate().
MechanismOutcome fair_inner_product(const AuctionInstance& instance,
                                    const MechanismVariant& variant = {},
                                    std::span<const std::size_t> input_index = {});

// Equal-|w| special case. Throws Error(kNonUniformWeights) otherwise and
// Error(kInvariantViolation) if the selected set differs from [k].
MechanismOutcome equal_weight_auction(const AuctionInstance& instance);

// Full pipeline on an arbitrary instance: canonicalize, filter, allocate.
struct AuctionResult {
  std::size_t original_size = 0;
  // Original indices of individuals dropped by the filter, ascending.
  std::vector<std::size_t> removed;
  // Canonical, filtered instance the mechanism ran on.
  AuctionInstance auctioned;
  // to_original[c] is the original index of canonical individual c.
  std::vector<std::size_t> to_original;
  MechanismOutcome outcome;
};

AuctionResult run_auction(const AuctionInstance& instance,
                          FilterMode mode = FilterMode::kFixedPoint,
                          const MechanismVariant& variant = {});

}  // namespace privauction

#endif  // PRIVAUCTION_MECHANISM_HPP_
