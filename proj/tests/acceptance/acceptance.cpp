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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "privauction/estimator.hpp"
#include "privauction/mechanism.hpp"
#include "privauction/optimal.hpp"
#include "privauction/predictors.hpp"
#include "privauction/verify.hpp"

namespace pa = privauction;
namespace pt = privauction::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t failed(const pa::VerificationReport& r, const std::string& name) {
  const auto* p = r.property(name);
  return p ? p->failed : std::numeric_limits<std::size_t>::max();
}

std::size_t checked(const pa::VerificationReport& r, const std::string& name) {
  const auto* p = r.property(name);
  return p ? p->passed + p->failed : 0;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Shared sweeps; several criteria read the same reports.
struct Sweeps {
  pa::VerificationReport signed_approx;
  pa::VerificationReport uniform_approx;
  pa::VerificationReport float_truth;
  pa::VerificationReport grid_truth;
  double approx_seconds = 0.0;
  double truth_seconds = 0.0;
};

Sweeps run_sweeps() {
  Sweeps s;
  pa::SweepConfig approx;
  approx.n_min = 2;
  approx.n_max = 12;
  approx.instance_count = 10000;
  approx.weight_distribution = pa::WeightDistribution::kSigned;
  approx.threads = 1;
  auto start = Clock::now();
  s.signed_approx = pa::run_approximation_sweep(approx);
  s.approx_seconds = seconds_since(start);
  approx.weight_distribution = pa::WeightDistribution::kUniform;
  s.uniform_approx = pa::run_approximation_sweep(approx);

  pa::SweepConfig truth;
  truth.n_min = 2;
  truth.n_max = 10;
  truth.instance_count = 10000;
  start = Clock::now();
  s.float_truth = pa::run_truthfulness_sweep(truth);
  pa::SweepConfig grid = pa::SweepConfig::integer_grid();
  grid.instance_count = 10000;
  grid.arithmetic = pa::Arithmetic::kRational;
  s.grid_truth = pa::run_truthfulness_sweep(grid);
  s.truth_seconds = seconds_since(start);
  return s;
}

Outcome hardness() {
  const auto inst = pa::hardness_instance(1.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  double opt = 0.0;
  double mech = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const auto start = Clock::now();
    opt = pa::brute_force_opt(inst).objective;
    mech = pa::fair_inner_product(inst).objective();
    best = std::min(best, seconds_since(start));
  }
  const double ratio = opt / mech;
  Outcome o;
  o.ok = opt == 2.0 && mech == 1.0 && ratio == 2.0 && best < 1e-3;
  o.detail = fmt("OPT=%g S=%g ratio=%g time=%.1fus", opt, mech, ratio, best * 1e6);
  return o;
}

Outcome approximation(const Sweeps& s) {
  Outcome o;
  o.ok = s.signed_approx.instances >= 10000 &&
         failed(s.signed_approx, "five_approximation") == 0 &&
         s.signed_approx.worst_ratio <= 5.0 &&
         failed(s.uniform_approx, "two_approximation_uniform") == 0 &&
         s.uniform_approx.worst_uniform_ratio <= 2.0 && s.approx_seconds < 300.0;
  o.detail = fmt("signed n=2..12: %zu instances, worst OPT/S=%.4f; uniform: worst=%.4f; %.1fs",
                 s.signed_approx.instances, s.signed_approx.worst_ratio,
                 s.uniform_approx.worst_uniform_ratio, s.approx_seconds);
  return o;
}

Outcome truthfulness(const Sweeps& s) {
  Outcome o;
  o.ok = s.float_truth.instances >= 10000 && failed(s.float_truth, "truthfulness") == 0 &&
         s.float_truth.worst_gain <= 1e-9 && s.grid_truth.instances >= 10000 &&
         failed(s.grid_truth, "truthfulness") == 0 && s.grid_truth.worst_gain <= 0.0 &&
         s.truth_seconds < 600.0;
  o.detail = fmt("float: %zu deviation checks, worst gain %.3g; rational grid: %zu checks, "
                 "worst gain %.3g; %.1fs",
                 checked(s.float_truth, "truthfulness"), s.float_truth.worst_gain,
                 checked(s.grid_truth, "truthfulness"), s.grid_truth.worst_gain,
                 s.truth_seconds);
  return o;
}

Outcome rationality(const Sweeps& s) {
  Outcome o;
  o.ok = failed(s.grid_truth, "budget") == 0 &&
         failed(s.grid_truth, "individual_rationality") == 0 &&
         failed(s.float_truth, "budget") == 0 &&
         failed(s.float_truth, "individual_rationality") == 0 &&
         checked(s.grid_truth, "budget") >= 10000;
  o.detail = fmt("exact: budget %zu/%zu IR %zu/%zu; float: budget %zu IR %zu failures",
                 failed(s.grid_truth, "budget"), checked(s.grid_truth, "budget"),
                 failed(s.grid_truth, "individual_rationality"),
                 checked(s.grid_truth, "individual_rationality"),
                 failed(s.float_truth, "budget"),
                 failed(s.float_truth, "individual_rationality"));
  return o;
}

Outcome fractional(const Sweeps& s) {
  Outcome o;
  std::size_t bad = 0;
  std::string names;
  for (const auto* r : {&s.signed_approx, &s.uniform_approx}) {
    for (const char* name : {"opt_below_fractional", "kkt", "budget_identity",
                             "ell_at_least_k", "next_weight_bound"}) {
      const std::size_t f = failed(*r, name);
      if (f != 0 || checked(*r, name) == 0) {
        ++bad;
        names += std::string(" ") + name;
      }
    }
  }
  // Known closed form on the hardness instance.
  const auto sol = pa::fractional_optimum(pa::hardness_instance(1.0, 1.0));
  const bool example = sol.ell == 2 && sol.objective == 2.0;
  o.ok = bad == 0 && example;
  o.detail = fmt("%zu oracle-sized instances; bound/KKT/identity failures: %zu%s; "
                 "hardness ell=%zu objective=%g",
                 s.signed_approx.instances + s.uniform_approx.instances, bad, names.c_str(),
                 sol.ell, sol.objective);
  return o;
}

Outcome distortion() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_mc = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto w = pt::random_signed_weights(rng, n);
    std::vector<double> x(n);
    for (double& xi : x) xi = u(rng);
    const double lo = -1.0 + u(rng);
    const pa::ValueInterval range(lo, lo + 0.5 + 2.0 * u(rng));
    const pa::Lef lef(w, range, x, 0.1 + 3.0 * u(rng));
    const double analytic = pa::distortion(lef);
    const double mc = pt::monte_carlo_distortion(lef, 1000000, 9000 + trial);
    worst_mc = std::max(worst_mc, std::fabs(mc - analytic) / analytic);
  }
  double worst_ulp = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto w = pt::random_signed_weights(rng, n);
    std::vector<bool> sel(n);
    for (std::size_t i = 0; i < n; ++i) sel[i] = rng() & 1U;
    const pa::Dclef d(w, pa::ValueInterval(-1.0, 1.5), sel);
    const double a = pa::distortion(d);
    const double b = pa::distortion(d.to_lef());
    if (a == 0.0 && b == 0.0) continue;
    const double scale = 2.25 * std::pow(2.5 * d.total_weight(), 2);
    worst_ulp = std::max(worst_ulp,
                         std::fabs(a - b) / (std::numeric_limits<double>::epsilon() * scale));
  }
  Outcome o;
  o.ok = worst_mc <= 0.01 && worst_ulp <= 8.0;
  o.detail = fmt("50 LEFs x 1e6 samples: worst relative gap %.4f%%; DCLEF closed form within "
                 "%.1f ulp",
                 100.0 * worst_mc, worst_ulp);
  return o;
}

Outcome privacy() {
  std::mt19937_64 rng(707);
  std::size_t pairs = 0;
  std::size_t bad_ratio = 0;
  std::size_t bad_sensitivity = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto w = pt::random_integer_weights(rng, n);
    std::vector<bool> sel(n);
    for (std::size_t i = 0; i < n; ++i) sel[i] = rng() & 1U;
    sel[rng() % n] = false;
    const pa::Dclef d(w, pa::ValueInterval(0.0, 1.0), sel);
    const pa::Lef lef = d.to_lef();
    const auto eps = pa::epsilons(d).values;
    for (std::size_t i = 0; i < n; ++i) {
      if (pt::brute_force_sensitivity(lef, i) != pa::sensitivity(lef, i) ||
          pa::sensitivity(lef, i) != std::fabs(w[i]) * (sel[i] ? 1.0 : 0.0)) {
        ++bad_sensitivity;
      }
      double best = 0.0;
      for (auto db : pt::corner_databases(n, 0.0, 1.0)) {
        db[i] = 0.0;
        auto db2 = db;
        db2[i] = 1.0;
        const double r = pa::max_log_density_ratio(lef, db, db2);
        if (r > eps[i]) ++bad_ratio;
        best = std::max(best, r);
        ++pairs;
      }
      if (best != eps[i]) ++bad_ratio;
    }
  }
  Outcome o;
  o.ok = bad_ratio == 0 && bad_sensitivity == 0;
  o.detail = fmt("100 DCLEFs, %zu neighbouring corner pairs: %zu ratio and %zu sensitivity "
                 "mismatches",
                 pairs, bad_ratio, bad_sensitivity);
  return o;
}

Outcome tradeoff() {
  std::mt19937_64 rng(808);
  const double alphas[] = {0.1, 0.25, 0.5};
  std::size_t estimators = 0;
  std::size_t premise_held = 0;
  std::size_t implication = 0;
  std::size_t greedy = 0;
  std::size_t construction = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto w = rep == 2 ? pt::random_integer_weights(rng, n)
                              : pt::random_signed_weights(rng, n);
      const pa::ValueInterval range(0.0, 1.0);
      double best_beta[3] = {0.0, 0.0, 0.0};
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> sel(n);
        for (std::size_t i = 0; i < n; ++i) sel[i] = mask >> i & 1U;
        const pa::Dclef d(w, range, sel);
        ++estimators;
        const double beta = pa::privacy_index_exact(d).beta;
        if (2.0 * pa::privacy_index_greedy(d).beta < beta * (1 - 1e-12)) ++greedy;
        for (int a = 0; a < 3; ++a) {
          const auto rep_a = pa::check_tradeoff_bound(d, alphas[a]);
          if (rep_a.status == pa::TradeoffStatus::kViolated) ++implication;
          if (rep_a.status == pa::TradeoffStatus::kHolds) {
            ++premise_held;
            best_beta[a] = std::max(best_beta[a], beta);
          }
        }
      }
      for (int a = 0; a < 3; ++a) {
        const pa::Dclef built = pa::tradeoff_construct(w, range, alphas[a]);
        const double bound = 2.25 * std::pow(alphas[a] * built.total_weight(), 2);
        if (pa::distortion(built) > bound * (1 + 1e-12) ||
            pa::privacy_index_exact(built).beta < best_beta[a] / 2.0 * (1 - 1e-12)) {
          ++construction;
        }
      }
    }
  }
  Outcome o;
  o.ok = implication == 0 && greedy == 0 && construction == 0 && premise_held > 0;
  o.detail = fmt("%zu DCLEFs (n<=12) x 3 alphas, premise held %zu times: implication %zu, "
                 "greedy %zu, construction %zu failures",
                 estimators, premise_held, implication, greedy, construction);
  return o;
}

Outcome predictors() {
  std::mt19937_64 rng(909);
  double worst_rel = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = pt::random_features(rng, 5 + trial, 1 + trial % 6);
    const double lambda = 0.1 + 0.2 * trial;
    const auto k = pa::kernel_regression_weights(f, pa::LinearKernel{}, lambda).weights;
    const auto r = pa::ridge_weights(f, lambda);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      scale = std::max(scale, std::fabs(r[i]));
      diff = std::max(diff, std::fabs(k[i] - r[i]));
    }
    worst_rel = std::max(worst_rel, diff / scale);
  }
  double worst_simplex = 0.0;
  bool negative = false;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = pt::random_features(rng, 2 + trial % 30, 1 + trial % 5);
    for (const auto& w : {pa::knn_weights(f, 1 + trial % f.rows()),
                          pa::nadaraya_watson_weights(f, pa::GaussianKernel{2.0})}) {
      double sum = 0.0;
      for (double x : w) {
        negative = negative || x < 0.0;
        sum += x;
      }
      worst_simplex = std::max(worst_simplex, std::fabs(sum - 1.0));
    }
  }
  Outcome o;
  o.ok = worst_rel <= 1e-8 && worst_simplex <= 1e-12 && !negative;
  o.detail = fmt("linear kernel vs ridge worst relative gap %.2e on 20 sets; simplex error "
                 "%.2e",
                 worst_rel, worst_simplex);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("%s  %d  %-34s %s\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  };
  report(1, "hardness instance", hardness());
  const Sweeps sweeps = run_sweeps();
  report(2, "approximation ratio", approximation(sweeps));
  report(3, "truthfulness", truthfulness(sweeps));
  report(4, "individual rationality and budget", rationality(sweeps));
  report(5, "fractional optimum", fractional(sweeps));
  report(6, "distortion formulas", distortion());
  report(7, "differential privacy", privacy());
  report(8, "privacy/distortion trade-off", tradeoff());
  report(9, "predictor identities", predictors());
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
