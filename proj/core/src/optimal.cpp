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

#include "privauction/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "privauction/error.hpp"
#include "privauction/mechanism.hpp"

namespace privauction {

FractionalSolution fractional_optimum(const AuctionInstance& instance) {
  if (!instance.is_canonical()) {
    throw Error(ErrorCode::kNotCanonical,
                "fractional optimum needs costs in non-decreasing order");
  }
  const std::size_t n = instance.size();
  const double budget = instance.budget();
  const std::vector<double> w = instance.abs_weights();
  const std::vector<double>& v = instance.unit_costs();

  // p(i) = sum_{j > i} |w_j|, q(i) = sum_{j <= i} v_j |w_j| (1-based i).
  std::vector<double> p(n + 1, 0.0);
  std::vector<double> q(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) p[i] = p[i + 1] + w[i];
  for (std::size_t i = 1; i <= n; ++i) q[i] = q[i - 1] + v[i - 1] * w[i - 1];

  // g(i) = q(i) - B p(i) is increasing; ell is the last i with g(i) <= 0.
  std::size_t ell = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (q[i] - budget * p[i] <= 0.0) ell = i;
  }
  if (ell == n) {
    throw Error(ErrorCode::kDegenerateAllOnes,
                "every individual fits in the budget at x = 1");
  }

  FractionalSolution sol;
  sol.ell = ell;
  sol.x_star.assign(n, 0.0);
  for (std::size_t i = 0; i < ell; ++i) sol.x_star[i] = 1.0;
  const double partial =
      (budget * p[ell] - q[ell]) / ((v[ell] + budget) * w[ell]);
  if (!(partial >= 0.0 && partial <= 1.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "fractional coordinate outside [0,1]");
  }
  sol.x_star[ell] = partial;

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    residual += w[i] * (1.0 - sol.x_star[i]);
    sol.objective += w[i] * sol.x_star[i];
  }
  sol.payments.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sol.payments[i] = v[i] * w[i] * sol.x_star[i] / residual;
  }
  return sol;
}

KktCertificate kkt_certificate(const AuctionInstance& instance,
                               const FractionalSolution& solution) {
  const std::size_t n = instance.size();
  const std::size_t ell = solution.ell;
  const double budget = instance.budget();
  const std::vector<double> w = instance.abs_weights();
  const std::vector<double>& v = instance.unit_costs();
  const std::vector<double>& x = solution.x_star;
  const double pivot = v.at(ell);

  KktCertificate cert;
  cert.lambda = 1.0 / (pivot + budget);
  cert.mu.assign(n, 0.0);
  cert.nu.assign(n, 0.0);
  cert.min_multiplier = cert.lambda;
  double spend = 0.0;
  double residual_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < ell) cert.mu[i] = (pivot - v[i]) * w[i] * cert.lambda;
    if (i > ell) cert.nu[i] = (v[i] - pivot) * w[i] * cert.lambda;
    cert.min_multiplier = std::min({cert.min_multiplier, cert.mu[i], cert.nu[i]});

    // d/dx_i of -F + lambda * budget_constraint + mu_i (x_i - 1) - nu_i x_i
    const double gradient =
        -w[i] + cert.lambda * (v[i] + budget) * w[i] + cert.mu[i] - cert.nu[i];
    cert.max_stationarity_residual =
        std::max(cert.max_stationarity_residual, std::fabs(gradient) / w[i]);
    cert.max_complementarity_residual =
        std::max({cert.max_complementarity_residual,
                  std::fabs(cert.mu[i] * (x[i] - 1.0)),
                  std::fabs(cert.nu[i] * x[i])});
    spend += v[i] * w[i] * x[i];
    residual_weight += w[i] * (1.0 - x[i]);
  }
  const double scale = std::max(spend + budget * residual_weight,
                                std::numeric_limits<double>::min());
  cert.budget_residual = std::fabs(spend - budget * residual_weight) / scale;
  return cert;
}

OracleSolution brute_force_opt(const AuctionInstance& instance) {
  const std::size_t n = instance.size();
  if (n > kMaxOracleSize) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute-force optimum limited to " +
                    std::to_string(kMaxOracleSize) + " individuals");
  }
  const double budget = instance.budget();
  const std::vector<double> w = instance.abs_weights();
  const std::vector<double>& v = instance.unit_costs();
  const bool all_free =
      std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });

  // Bit (n - 1 - i) of the mask is x_i, so walking masks downwards visits x
  // in decreasing lexicographic order and the first maximum found favours
  // selecting lower indices.
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::uint32_t best_mask = 0;
  double best = -1.0;
  for (std::uint64_t m = full + std::uint64_t{1}; m-- > 0;) {
    const auto mask = static_cast<std::uint32_t>(m);
    if (mask == full && !all_free) continue;
    double selected = 0.0;
    double residual = 0.0;
    double spend = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> (n - 1 - i) & 1U) {
        selected += w[i];
        spend += v[i] * w[i];
      } else {
        residual += w[i];
      }
    }
    if (selected <= best) continue;
    if (mask != full && spend > budget * residual) continue;
    best = selected;
    best_mask = mask;
  }

  OracleSolution sol;
  sol.x.assign(n, false);
  sol.payments.assign(n, 0.0);
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sol.x[i] = (best_mask >> (n - 1 - i) & 1U) != 0;
    if (sol.x[i]) {
      sol.objective += w[i];
    } else {
      residual += w[i];
    }
  }
  if (residual > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sol.x[i]) sol.payments[i] = v[i] * w[i] / residual;
    }
  }
  return sol;
}

BoundsReport opt_bounds_check(const AuctionInstance& instance,
                              const MechanismVariant& variant) {
  const MechanismOutcome mech = fair_inner_product(instance, variant);
  const FractionalSolution frac = fractional_optimum(instance);
  const OracleSolution opt = brute_force_opt(instance);
  const std::vector<double> w = instance.abs_weights();

  BoundsReport report;
  report.opt = opt.objective;
  report.fractional = frac.objective;
  report.mechanism = mech.objective();
  report.ratio = report.opt / report.mechanism;
  report.k = mech.diagnostics.k;
  report.ell = frac.ell;
  report.uniform_weights =
      std::all_of(w.begin(), w.end(), [&w](double x) { return x == w[0]; });

  const double slack = 1.0 + kBoundsTolerance;
  auto fail = [&report](bool& flag, const std::string& message) {
    flag = false;
    report.failures.push_back(message);
  };
  std::ostringstream detail;
  detail.precision(17);

  if (report.opt > report.fractional * slack) {
    detail << "OPT " << report.opt << " exceeds fractional " << report.fractional;
    fail(report.opt_below_fractional, detail.str());
  }
  if (report.ratio > 5.0 * slack) {
    fail(report.five_approximation,
         "approximation ratio " + std::to_string(report.ratio) + " above 5");
  }
  if (report.uniform_weights && report.ratio > 2.0 * slack) {
    fail(report.two_approximation,
         "equal-weight ratio " + std::to_string(report.ratio) + " above 2");
  }
  if (report.ell < report.k) {
    fail(report.ell_at_least_k, "ell " + std::to_string(report.ell) +
                                    " below k " + std::to_string(report.k));
  }
  // Prefix [k+1] against the fractional mass on positions k+1 .. ell+1
  // (0-based k .. ell).
  double head = 0.0;
  for (std::size_t i = 0; i <= report.k && i < w.size(); ++i) head += w[i];
  double tail = 0.0;
  for (std::size_t i = report.k; i <= report.ell && i < w.size(); ++i) {
    tail += w[i] * frac.x_star[i];
  }
  if (!(head * slack > tail)) {
    fail(report.next_weight_bound,
         "w([k+1]) = " + std::to_string(head) +
             " not above fractional tail " + std::to_string(tail));
  }
  return report;
}

}  // namespace privauction
