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
#include <cstdlib>
#include <string>
#include <thread>

#include "privauction/error.hpp"
#include "privauction/laplace.hpp"
#include "privauction/optimal.hpp"
#include "privauction/verify.hpp"

namespace privauction {
namespace {

constexpr int kMaxDraws = 1000;

// 21 points between 1/10 and 10.
constexpr std::int64_t kGrid[][2] = {
    {1, 10}, {1, 8}, {1, 5},  {1, 4},  {1, 3}, {1, 2}, {2, 3},
    {3, 4},  {4, 5}, {9, 10}, {1, 1},  {11, 10}, {5, 4}, {3, 2},
    {2, 1},  {3, 1}, {4, 1},  {5, 1},  {6, 1},  {8, 1}, {10, 1}};

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& s, const char* what,
                const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw Error(ErrorCode::kValidation,
              std::string("unknown ") + what + " '" + s + "'");
}

constexpr std::pair<const char*, WeightDistribution> kWeightNames[] = {
    {"uniform", WeightDistribution::kUniform},
    {"lognormal", WeightDistribution::kLognormal},
    {"signed", WeightDistribution::kSigned},
    {"integer-grid", WeightDistribution::kIntegerGrid}};
constexpr std::pair<const char*, CostDistribution> kCostNames[] = {
    {"uniform", CostDistribution::kUniform},
    {"lognormal", CostDistribution::kLognormal},
    {"integer-grid", CostDistribution::kIntegerGrid}};
constexpr std::pair<const char*, BudgetRule> kBudgetNames[] = {
    {"log-uniform", BudgetRule::kLogUniform},
    {"integer-grid", BudgetRule::kIntegerGrid}};
constexpr std::pair<const char*, Arithmetic> kArithmeticNames[] = {
    {"float", Arithmetic::kFloat}, {"rational", Arithmetic::kRational}};

template <class Enum, std::size_t N>
std::string enum_name(Enum value,
                      const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Box-Muller on the open unit interval.
double standard_normal(Rng& rng) {
  const double u1 = uniform_open01(rng);
  const double u2 = uniform_open01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<double> draw_weights(const SweepConfig& c, Rng& rng,
                                 std::size_t n) {
  std::vector<double> w(n);
  switch (c.weight_distribution) {
    case WeightDistribution::kUniform: {
      const double m = 0.5 + 4.5 * uniform_open01(rng);
      std::fill(w.begin(), w.end(), m);
      break;
    }
    case WeightDistribution::kLognormal:
      for (double& x : w) x = std::exp(standard_normal(rng));
      break;
    case WeightDistribution::kSigned:
      for (double& x : w) {
        x = std::exp(standard_normal(rng));
        if (rng() & 1U) x = -x;
      }
      break;
    case WeightDistribution::kIntegerGrid:
      for (double& x : w) {
        const std::int64_t k = uniform_int(rng, 1, 20);
        x = static_cast<double>(k <= 10 ? k : 10 - k);
      }
      break;
  }
  return w;
}

std::vector<double> draw_costs(const SweepConfig& c, Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) {
    switch (c.cost_distribution) {
      case CostDistribution::kUniform:
        x = 10.0 * uniform_open01(rng);
        break;
      case CostDistribution::kLognormal:
        x = std::exp(standard_normal(rng));
        break;
      case CostDistribution::kIntegerGrid:
        x = static_cast<double>(uniform_int(rng, 0, 20));
        break;
    }
  }
  return v;
}

double draw_budget(const SweepConfig& c, Rng& rng,
                   const std::vector<double>& w, const std::vector<double>& v) {
  double total = 0.0;
  for (double x : w) total += std::fabs(x);
  double b0 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double rest = total - std::fabs(w[i]);
    b0 = std::max(b0, std::fabs(w[i]) * v[i] / rest);
  }
  if (c.budget_rule == BudgetRule::kLogUniform) {
    if (b0 == 0.0) b0 = 1.0;
    return b0 * std::exp2(-1.0 + 7.0 * uniform_open01(rng));
  }
  const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(b0 / 2));
  const auto hi =
      32 * std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(b0)));
  return static_cast<double>(uniform_int(rng, lo, hi));
}

}  // namespace

std::string to_string(WeightDistribution d) { return enum_name(d, kWeightNames); }
std::string to_string(CostDistribution d) { return enum_name(d, kCostNames); }
std::string to_string(BudgetRule r) { return enum_name(r, kBudgetNames); }
std::string to_string(Arithmetic a) { return enum_name(a, kArithmeticNames); }

WeightDistribution parse_weight_distribution(const std::string& s) {
  return parse_enum(s, "weight distribution", kWeightNames);
}
CostDistribution parse_cost_distribution(const std::string& s) {
  return parse_enum(s, "cost distribution", kCostNames);
}
BudgetRule parse_budget_rule(const std::string& s) {
  return parse_enum(s, "budget rule", kBudgetNames);
}
Arithmetic parse_arithmetic(const std::string& s) {
  return parse_enum(s, "arithmetic", kArithmeticNames);
}

SweepConfig SweepConfig::integer_grid() {
  SweepConfig c;
  c.weight_distribution = WeightDistribution::kIntegerGrid;
  c.cost_distribution = CostDistribution::kIntegerGrid;
  c.budget_rule = BudgetRule::kIntegerGrid;
  return c;
}

bool SweepConfig::is_integer_grid() const {
  return weight_distribution == WeightDistribution::kIntegerGrid &&
         cost_distribution == CostDistribution::kIntegerGrid &&
         budget_rule == BudgetRule::kIntegerGrid;
}

void SweepConfig::validate() const {
  if (n_min < 2 || n_max < n_min) {
    throw Error(ErrorCode::kValidation, "n range must satisfy 2 <= n_min <= n_max");
  }
  if (n_max > 64) {
    throw Error(ErrorCode::kValidation, "n_max above 64");
  }
  if (arithmetic == Arithmetic::kRational && !is_integer_grid()) {
    throw Error(ErrorCode::kValidation,
                "rational arithmetic needs integer-grid weights, costs and budget");
  }
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "sweep config must be a JSON object");
  }
  SweepConfig c;
  try {
    if (doc.contains("n_range")) {
      const auto& r = doc.at("n_range");
      c.n_min = r.at(0).get<std::size_t>();
      c.n_max = r.at(1).get<std::size_t>();
    }
    if (doc.contains("instance_count")) {
      c.instance_count = doc.at("instance_count").get<std::size_t>();
    }
    if (doc.contains("weight_distribution")) {
      c.weight_distribution =
          parse_weight_distribution(doc.at("weight_distribution").get<std::string>());
    }
    if (doc.contains("cost_distribution")) {
      c.cost_distribution =
          parse_cost_distribution(doc.at("cost_distribution").get<std::string>());
    }
    if (doc.contains("budget_rule")) {
      c.budget_rule = parse_budget_rule(doc.at("budget_rule").get<std::string>());
    }
    if (doc.contains("rng_seed")) c.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
    if (doc.contains("arithmetic")) {
      c.arithmetic = parse_arithmetic(doc.at("arithmetic").get<std::string>());
    }
    if (doc.contains("mutation") && !doc.at("mutation").is_null()) {
      const auto& m = doc.at("mutation");
      if (m.is_string()) {
        c.variant = parse_mutation(m.get<std::string>());
      } else {
        const auto scale = m.value("payment_scale", std::vector<std::int64_t>{1, 1});
        if (scale.size() != 2 || scale[0] <= 0 || scale[1] <= 0) {
          throw Error(ErrorCode::kValidation, "mutation payment_scale must be [num, den] > 0");
        }
        c.variant.payment_scale_num = scale[0];
        c.variant.payment_scale_den = scale[1];
        c.variant.k_off_by_one = m.value("k_off_by_one", false);
        c.variant.star_non_strict = m.value("star_non_strict", false);
        c.variant.drop_next_cost_cap = m.value("drop_next_cost_cap", false);
      }
    }
    if (doc.contains("threads")) c.threads = doc.at("threads").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json doc;
  doc["n_range"] = {c.n_min, c.n_max};
  doc["instance_count"] = c.instance_count;
  doc["weight_distribution"] = to_string(c.weight_distribution);
  doc["cost_distribution"] = to_string(c.cost_distribution);
  doc["budget_rule"] = to_string(c.budget_rule);
  doc["rng_seed"] = c.rng_seed;
  doc["arithmetic"] = to_string(c.arithmetic);
  if (!c.variant.is_reference()) {
    doc["mutation"] = {{"payment_scale", {c.variant.payment_scale_num,
                                          c.variant.payment_scale_den}},
                       {"k_off_by_one", c.variant.k_off_by_one},
                       {"star_non_strict", c.variant.star_non_strict},
                       {"drop_next_cost_cap", c.variant.drop_next_cost_cap}};
  }
  return doc;
}

std::size_t resolve_threads(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PRIVAUCTION_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

AuctionInstance generate_instance(const SweepConfig& config, std::size_t index) {
  Rng rng(mix_seed(config.rng_seed, index));
  const ValueInterval unit(0.0, 1.0);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const auto n = static_cast<std::size_t>(uniform_int(
        rng, static_cast<std::int64_t>(config.n_min),
        static_cast<std::int64_t>(config.n_max)));
    std::vector<double> w = draw_weights(config, rng, n);
    std::vector<double> v = draw_costs(config, rng, n);
    const double b = draw_budget(config, rng, w, v);
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
      continue;
    }
    AuctionInstance raw(std::move(w), std::move(v), b, unit);
    try {
      FilterResult f = filter_payable(raw, FilterMode::kFixedPoint);
      const auto& costs = f.instance.unit_costs();
      if (f.instance.size() >= 2 &&
          std::any_of(costs.begin(), costs.end(), [](double x) { return x > 0.0; })) {
        return f.instance;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInstance) throw;
    }
  }
  throw Error(ErrorCode::kInvariantViolation,
              "instance generator found no usable instance");
}

AuctionInstance hardness_instance(double a, double d) {
  if (!(a > 0.0 && a < 2.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "a must lie in (0,2)");
  }
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw Error(ErrorCode::kParameterOutOfRange, "d must be positive");
  }
  return AuctionInstance({d, d, d, d}, {a, 2.0, 2.0, 2.0}, 1.0 + a / 2.0,
                         ValueInterval(0.0, 1.0));
}

std::vector<Misreport> misreport_grid(const AuctionInstance& instance,
                                      std::size_t i) {
  const auto& v = instance.unit_costs();
  double base = v.at(i);
  if (base == 0.0) base = std::max(1.0, *std::max_element(v.begin(), v.end()));
  std::vector<Misreport> grid;
  for (const auto& [num, den] : kGrid) grid.push_back({base, num, den});
  grid.push_back({0.0, 0, 1});
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j == i) continue;
    if (v[j] > 0.0) {
      grid.push_back({v[j], 999, 1000});
      grid.push_back({v[j], 1, 1});
      grid.push_back({v[j], 1001, 1000});
    } else {
      grid.push_back({1.0, 1, 1000});
    }
  }
  return grid;
}

}  // namespace privauction
