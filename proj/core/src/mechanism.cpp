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

#include "privauction/mechanism.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "privauction/error.hpp"

namespace privauction {
namespace {

template <class Scalar>
Scalar scalar(std::int64_t value) {
  return Scalar(value);
}

template <class Scalar>
void check_preconditions(std::span<const Scalar> w, std::span<const Scalar> v,
                         const Scalar& budget, const Scalar& total) {
  const Scalar zero = scalar<Scalar>(0);
  if (w.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weights and unit costs differ in length");
  }
  if (w.size() < 2) {
    throw Error(ErrorCode::kEmptyInstance,
                "at least two individuals are needed to pay anyone");
  }
  if (!(budget > zero)) {
    throw Error(ErrorCode::kValidation, "budget must be positive");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > zero)) {
      throw Error(ErrorCode::kValidation, "weight magnitudes must be positive");
    }
    if (v[i] < zero) {
      throw Error(ErrorCode::kValidation, "unit costs must be nonnegative");
    }
    if (i > 0 && v[i] < v[i - 1]) {
      throw Error(ErrorCode::kNotCanonical,
                  "unit costs are not sorted in non-decreasing order");
    }
    const Scalar rest = total - w[i];
    if (!(rest > zero) || w[i] * v[i] > budget * rest) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "individual " + std::to_string(i) +
                      " cannot be paid within budget");
    }
  }
}

}  // namespace

std::string to_string(Branch branch) {
  return branch == Branch::kStar ? "star" : "topk";
}

MechanismVariant parse_mutation(const std::string& spec) {
  MechanismVariant variant;
  if (spec == "k-off-by-one") {
    variant.k_off_by_one = true;
  } else if (spec == "star-non-strict") {
    variant.star_non_strict = true;
  } else if (spec == "drop-next-cost-cap") {
    variant.drop_next_cost_cap = true;
  } else if (spec.rfind("payment-scale:", 0) == 0) {
    const std::string value = spec.substr(std::string("payment-scale:").size());
    const auto dot = value.find('.');
    const std::string whole = value.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : value.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.size() > 9 ||
        whole.find_first_not_of("0123456789") != std::string::npos ||
        frac.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::kValidation, "bad payment scale '" + value + "'");
    }
    std::int64_t num = 0;
    const std::string digits = whole + frac;
    std::from_chars(digits.data(), digits.data() + digits.size(), num);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (num <= 0) throw Error(ErrorCode::kValidation, "payment scale must be > 0");
    const std::int64_t g = std::gcd(num, den);
    variant.payment_scale_num = num / g;
    variant.payment_scale_den = den / g;
  } else {
    throw Error(ErrorCode::kValidation, "unknown mutation '" + spec + "'");
  }
  return variant;
}

template <class Scalar>
Allocation<Scalar> allocate(std::span<const Scalar> w,
                            std::span<const Scalar> v, const Scalar& budget,
                            const MechanismVariant& variant,
                            std::span<const std::size_t> input_index) {
  const std::size_t n = w.size();
  Scalar total = scalar<Scalar>(0);
  for (const Scalar& wi : w) total += wi;
  check_preconditions(w, v, budget, total);

  // k = max{ t < n : B / w([t]) >= v_t / (W - w([t])) }, written without
  // division. t = n never qualifies since W - w([n]) = 0.
  std::size_t k = 0;
  Scalar prefix = scalar<Scalar>(0);
  std::vector<Scalar> prefix_at(n + 1, scalar<Scalar>(0));
  for (std::size_t t = 1; t <= n; ++t) {
    prefix += w[t - 1];
    prefix_at[t] = prefix;
    if (t < n && budget * (total - prefix) >= v[t - 1] * prefix) k = t;
  }
  if (k == 0) {
    throw Error(ErrorCode::kAssumptionViolated, "no individual passes the threshold");
  }
  if (variant.k_off_by_one) k = std::min(k + 1, n - 1);

  if (!input_index.empty() && input_index.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "input index map has wrong length");
  }
  auto rank = [&input_index](std::size_t i) {
    return input_index.empty() ? i : input_index[i];
  };
  std::size_t i_star = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (w[i] > w[i_star] || (w[i] == w[i_star] && rank(i) < rank(i_star))) {
      i_star = i;
    }
  }

  Scalar others_in_k = prefix_at[k];
  if (i_star < k) others_in_k -= w[i_star];
  const bool star_strict = w[i_star] > others_in_k;
  const bool star = variant.star_non_strict ? w[i_star] >= others_in_k
                                            : star_strict;

  const Scalar scale_num = scalar<Scalar>(variant.payment_scale_num);
  const Scalar scale_den = scalar<Scalar>(variant.payment_scale_den);

  Allocation<Scalar> out;
  out.k = k;
  out.i_star = i_star;
  out.payments.assign(n, scalar<Scalar>(0));

  if (star) {
    // Threshold set of the instance without i*: positions t != i* where
    // B / w([t] \ {i*}) >= v_t / (W - w([t] \ {i*})) and w([t] \ {i*}) >= |w_i*|.
    std::optional<std::size_t> r;
    for (std::size_t t = 1; t <= n && !r; ++t) {
      if (t - 1 == i_star) continue;
      Scalar without = prefix_at[t];
      if (i_star < t) without -= w[i_star];
      const bool passes = budget * (total - without) >= v[t - 1] * without;
      if (passes && without >= w[i_star]) r = t - 1;
    }
    if (star_strict) {
      if (i_star > k && r) {
        throw Error(ErrorCode::kInvariantViolation,
                    "heaviest individual beyond k+1 with a non-empty "
                    "threshold set");
      }
      if (r && *r <= i_star) {
        throw Error(ErrorCode::kInvariantViolation,
                    "threshold position does not exceed i*");
      }
    }
    const Scalar p_hat =
        r ? w[i_star] * v[*r] / (total - w[i_star]) : budget;
    out.branch = Branch::kStar;
    out.r = r;
    out.p_hat = p_hat;
    out.selected = {i_star};
    out.payments[i_star] = p_hat * scale_num / scale_den;
  } else {
    Scalar rate = budget / prefix_at[k];
    if (!variant.drop_next_cost_cap) {
      const Scalar cap = v[k] / (total - prefix_at[k]);
      if (cap < rate) rate = cap;
    }
    out.branch = Branch::kTopK;
    out.selected.resize(k);
    std::iota(out.selected.begin(), out.selected.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      out.payments[i] = w[i] * rate * scale_num / scale_den;
    }
  }
  return out;
}

template Allocation<double> allocate<double>(std::span<const double>,
                                             std::span<const double>,
                                             const double&,
                                             const MechanismVariant&,
                                             std::span<const std::size_t>);
template Allocation<Rational> allocate<Rational>(std::span<const Rational>,
                                                 std::span<const Rational>,
                                                 const Rational&,
                                                 const MechanismVariant&,
                                                 std::span<const std::size_t>);

template <class Scalar>
std::vector<Scalar> selection_epsilons(std::span<const Scalar> w,
                                       std::span<const std::size_t> selected) {
  std::vector<bool> in(w.size(), false);
  for (std::size_t i : selected) in.at(i) = true;
  Scalar residual = scalar<Scalar>(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!in[i]) residual += w[i];
  }
  if (!(residual > scalar<Scalar>(0))) {
    throw Error(ErrorCode::kValidation,
                "selection leaves no residual weight; privacy loss unbounded");
  }
  std::vector<Scalar> eps(w.size(), scalar<Scalar>(0));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (in[i]) eps[i] = w[i] / residual;
  }
  return eps;
}

template std::vector<double> selection_epsilons<double>(
    std::span<const double>, std::span<const std::size_t>);
template std::vector<Rational> selection_epsilons<Rational>(
    std::span<const Rational>, std::span<const std::size_t>);

double MechanismOutcome::total_payment() const {
  return std::accumulate(payments.begin(), payments.end(), 0.0);
}

MechanismOutcome fair_inner_product(const AuctionInstance& instance,
                                    const MechanismVariant& variant,
                                    std::span<const std::size_t> input_index) {
  const std::vector<double> w = instance.abs_weights();
  const Allocation<double> alloc = allocate<double>(
      w, instance.unit_costs(), instance.budget(), variant, input_index);
  MechanismDiagnostics diagnostics{alloc.k, alloc.i_star, alloc.branch, alloc.r,
                                   alloc.p_hat};
  return MechanismOutcome{alloc.selected, alloc.payments,
                          Dclef::from_selection(instance, alloc.selected),
                          diagnostics};
}

MechanismOutcome equal_weight_auction(const AuctionInstance& instance) {
  const double magnitude = instance.abs_weight(0);
  for (std::size_t i = 1; i < instance.size(); ++i) {
    if (instance.abs_weight(i) != magnitude) {
      throw Error(ErrorCode::kNonUniformWeights,
                  "weights differ in magnitude at index " + std::to_string(i));
    }
  }
  MechanismOutcome outcome = fair_inner_product(instance);
  std::vector<std::size_t> top_k(outcome.diagnostics.k);
  std::iota(top_k.begin(), top_k.end(), std::size_t{0});
  if (outcome.selected != top_k) {
    throw Error(ErrorCode::kInvariantViolation,
                "equal weights selected a set other than the k cheapest");
  }
  return outcome;
}

AuctionResult run_auction(const AuctionInstance& instance, FilterMode mode,
                          const MechanismVariant& variant) {
  auto [canonical, permutation] = canonicalize(instance);
  FilterResult filtered = filter_payable(canonical, mode);

  std::vector<std::size_t> to_original;
  for (std::size_t c : filtered.kept) {
    to_original.push_back(permutation.to_original(c));
  }
  MechanismOutcome outcome =
      fair_inner_product(filtered.instance, variant, to_original);
  AuctionResult result{instance.size(), {}, filtered.instance,
                       std::move(to_original), std::move(outcome)};
  for (std::size_t c : filtered.removed) {
    result.removed.push_back(permutation.to_original(c));
  }
  std::sort(result.removed.begin(), result.removed.end());
  return result;
}

}  // namespace privauction
