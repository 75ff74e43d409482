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

#ifndef PRIVAUCTION_VERIFY_HPP_
#define PRIVAUCTION_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "privauction/instance.hpp"
#include "privauction/mechanism.hpp"

namespace privauction {

enum class WeightDistribution {
  kUniform,      // one positive magnitude shared by everybody
  kLognormal,    // positive, exp(N(0,1))
  kSigned,       // lognormal magnitude, random sign
  kIntegerGrid,  // integers in [-10, 10] without 0
};

enum class CostDistribution {
  kUniform,      // U(0, 10)
  kLognormal,    // exp(N(0,1))
  kIntegerGrid,  // integers in [0, 20]
};

enum class BudgetRule {
  // B = b0 * 2^U(-1,6) where b0 is the largest payability threshold |w_i| v_i / (W - |w_i|).
  kLogUniform,
  // Integer B drawn uniformly from [max(1, floor(b0/2)), 32 * max(1, ceil(b0))].
  kIntegerGrid,
};

enum class Arithmetic { kFloat, kRational };

std::string to_string(WeightDistribution d);
std::string to_string(CostDistribution d);
std::string to_string(BudgetRule r);
std::string to_string(Arithmetic a);
WeightDistribution parse_weight_distribution(const std::string& s);
CostDistribution parse_cost_distribution(const std::string& s);
BudgetRule parse_budget_rule(const std::string& s);
Arithmetic parse_arithmetic(const std::string& s);

struct SweepConfig {
  std::size_t n_min = 2;
  std::size_t n_max = 10;
  std::size_t instance_count = 10000;
  WeightDistribution weight_distribution = WeightDistribution::kSigned;
  CostDistribution cost_distribution = CostDistribution::kUniform;
  BudgetRule budget_rule = BudgetRule::kLogUniform;
  std::uint64_t rng_seed = 1;
  Arithmetic arithmetic = Arithmetic::kFloat;
  MechanismVariant variant;
  // 0 means hardware concurrency. PRIVAUCTION_THREADS caps either value.
  std::size_t threads = 0;

  // Integer-grid weights, costs and budget; needed for rational mode.
  static SweepConfig integer_grid();
  bool is_integer_grid() const;
  // Throws Error(kValidation) on an unusable configuration.
  void validate() const;
};

// Reads the keys written by sweep_config_to_json; absent keys keep defaults.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
nlohmann::json sweep_config_to_json(const SweepConfig& config);

std::size_t resolve_threads(std::size_t requested);

// Instance `index` of the stream: generated from mix_seed(rng_seed, index),
// payability filtered (fixed point), original order, at least two
// individuals with some nonzero cost.
AuctionInstance generate_instance(const SweepConfig& config, std::size_t index);

// n = 4, all weights d, costs (a, 2, 2, 2), budget 1 + a/2, interval [0, 1].
// Throws Error(kParameterOutOfRange) unless 0 < a < 2 and d > 0.
AuctionInstance hardness_instance(double a, double d);

// Grid of misreports for individual i: 21 multiplicative points of v_i
// between v_i/10 and 10 v_i, 0, and v_j, v_j (1 +- 1/1000) for every j != i.
// Returned as num/den pairs scaled by the integer costs in rational mode,
// hence the exact representation.
struct Misreport {
  // Value relative to the instance: base * num / den.
  double base = 0.0;
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return base * static_cast<double>(num) / static_cast<double>(den); }
};
std::vector<Misreport> misreport_grid(const AuctionInstance& instance,
                                      std::size_t i);

struct PropertyCount {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Witness {
  std::string property;
  std::uint64_t master_seed = 0;
  std::size_t instance_index = 0;
  std::uint64_t instance_seed = 0;
  nlohmann::json instance;
  std::optional<std::size_t> individual;
  std::optional<double> misreport;
  std::string detail;
};

struct RatioRow {
  std::size_t instance_id = 0;
  double ratio = 1.0;
  Branch branch = Branch::kTopK;
};

inline constexpr std::size_t kMaxWitnesses = 20;
// Absolute slack on utilities and relative slack on IR and budget in float
// mode. Rational mode compares exactly.
inline constexpr double kSweepTolerance = 1e-9;

struct VerificationReport {
  std::string sweep;
  SweepConfig config;
  std::size_t instances = 0;
  std::vector<PropertyCount> properties;
  // Approximation sweep only.
  double worst_ratio = 1.0;
  std::optional<std::size_t> worst_ratio_instance;
  std::size_t uniform_instances = 0;
  double worst_uniform_ratio = 1.0;
  std::vector<RatioRow> ratio_rows;
  // Truthfulness sweep only: the largest utility gain found by a misreport.
  double worst_gain = 0.0;
  std::optional<Witness> worst_deviation;
  // First failures in instance order, at most kMaxWitnesses.
  std::vector<Witness> witnesses;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  const PropertyCount* property(const std::string& name) const;
};

// Truthfulness, individual rationality and budget feasibility of the
// configured mechanism variant over the instance stream.
VerificationReport run_truthfulness_sweep(const SweepConfig& config);

// OPT / S(x; w) against the oracle, the fractional bounds and their KKT
// certificate, sign-flip invariance. Requires n_max <= kMaxOracleSize.
VerificationReport run_approximation_sweep(const SweepConfig& config);

nlohmann::json report_to_json(const VerificationReport& report);
// instance_id,ratio,branch rows of an approximation report.
std::string ratio_rows_csv(const VerificationReport& report);

}  // namespace privauction

#endif  // PRIVAUCTION_VERIFY_HPP_
