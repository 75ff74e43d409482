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

#ifndef PRIVAUCTION_OPTIMAL_HPP_
#define PRIVAUCTION_OPTIMAL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "privauction/instance.hpp"
#include "privauction/mechanism.hpp"

namespace privauction {

// Optimum of the continuous relaxation: maximize sum |w_i| x_i over
// x in [0,1]^n subject to tight individual rationality and the budget.
struct FractionalSolution {
  std::vector<double> x_star;
  std::vector<double> payments;
  // Number of individuals with x* = 1; x*_{ell+1} is the only fractional one.
  std::size_t ell = 0;
  double objective = 0.0;
};

// Closed-form optimum for a canonical instance. Throws
// Error(kDegenerateAllOnes) when every individual could be fully selected,
// which only happens when all unit costs are zero.
FractionalSolution fractional_optimum(const AuctionInstance& instance);

// Lagrange multipliers certifying optimality of a FractionalSolution, with
// the worst residuals of each KKT condition.
struct KktCertificate {
  double lambda = 0.0;
  std::vector<double> mu;  // upper-bound multipliers (x_i <= 1)
  std::vector<double> nu;  // lower-bound multipliers (x_i >= 0)
  double max_stationarity_residual = 0.0;
  double max_complementarity_residual = 0.0;
  double budget_residual = 0.0;
  double min_multiplier = 0.0;
};

KktCertificate kkt_certificate(const AuctionInstance& instance,
                               const FractionalSolution& solution);

// Best discrete canonical estimator that can be paid its tight individually
// rational price within budget.
struct OracleSolution {
  std::vector<bool> x;
  double objective = 0.0;
  std::vector<double> payments;
};

inline constexpr std::size_t kMaxOracleSize = 20;

// Exhaustive search over x in {0,1}^n. Ties go to the lexicographically
// smallest x (with 0 < 1). All-ones is only admitted when every cost is
// zero. Throws Error(kInstanceTooLarge) above kMaxOracleSize individuals.
OracleSolution brute_force_opt(const AuctionInstance& instance);

struct BoundsReport {
  double opt = 0.0;
  double fractional = 0.0;
  double mechanism = 0.0;
  // OPT / S(x; w), at least 1.
  double ratio = 1.0;
  std::size_t k = 0;
  std::size_t ell = 0;
  bool uniform_weights = false;
  bool opt_below_fractional = true;
  bool five_approximation = true;
  bool two_approximation = true;  // only meaningful for uniform weights
  bool ell_at_least_k = true;
  bool next_weight_bound = true;  // w([k+1]) > sum_{k+1..ell+1} |w_i| x*_i
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Relative slack for comparisons between independently rounded objectives.
inline constexpr double kBoundsTolerance = 1e-9;

// Runs the mechanism, the fractional optimum and the oracle on a canonical,
// filtered instance and checks the approximation bounds between them.
BoundsReport opt_bounds_check(const AuctionInstance& instance,
                              const MechanismVariant& variant = {});

}  // namespace privauction

#endif  // PRIVAUCTION_OPTIMAL_HPP_
