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

#include "privauction/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "privauction/error.hpp"
#include "privauction/instance_io.hpp"
#include "privauction/laplace.hpp"
#include "privauction/optimal.hpp"
#include "privauction/rational.hpp"

namespace privauction {
namespace {

constexpr const char* kTruthProperties[] = {
    "pipeline", "pipeline_agreement", "budget", "individual_rationality",
    "truthfulness"};
constexpr const char* kApproxProperties[] = {
    "pipeline",        "opt_below_fractional", "five_approximation",
    "two_approximation_uniform", "ell_at_least_k", "next_weight_bound",
    "kkt",             "budget_identity",      "sign_invariance",
    "uniform_top_k"};

enum TruthProperty { kTPipeline, kTAgreement, kTBudget, kTIr, kTTruthful };
enum ApproxProperty {
  kAPipeline,
  kAOptBelowFractional,
  kAFive,
  kATwo,
  kAEll,
  kANextWeight,
  kAKkt,
  kABudgetIdentity,
  kASign,
  kAUniformTopK,
};

struct InstanceResult {
  std::vector<PropertyCount> counts;
  std::vector<Witness> witnesses;
  double ratio = 1.0;
  bool has_ratio = false;
  bool uniform = false;
  Branch branch = Branch::kTopK;
  double gain = 0.0;
  std::optional<Witness> gain_witness;
};

class Recorder {
 public:
  Recorder(const SweepConfig& config, std::size_t index,
           const AuctionInstance& instance, InstanceResult& out,
           std::span<const char* const> names)
      : config_(config), index_(index), instance_(instance), out_(out) {
    for (const char* name : names) out_.counts.push_back({name, 0, 0});
  }

  void pass(int property) { ++out_.counts[property].passed; }

  void check(int property, bool ok, const std::string& detail,
             std::optional<std::size_t> individual = std::nullopt,
             std::optional<double> misreport = std::nullopt) {
    if (ok) {
      pass(property);
      return;
    }
    ++out_.counts[property].failed;
    if (out_.witnesses.size() < kMaxWitnesses) {
      out_.witnesses.push_back(
          make_witness(out_.counts[property].name, detail, individual, misreport));
    }
  }

  Witness make_witness(const std::string& property, const std::string& detail,
                       std::optional<std::size_t> individual,
                       std::optional<double> misreport) const {
    return Witness{property,
                   config_.rng_seed,
                   index_,
                   mix_seed(config_.rng_seed, index_),
                   instance_to_json(instance_),
                   individual,
                   misreport,
                   detail};
  }

 private:
  const SweepConfig& config_;
  std::size_t index_;
  const AuctionInstance& instance_;
  InstanceResult& out_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double to_double(double x) { return x; }
double to_double(const Rational& x) { return x.to_double(); }

template <class S>
S from_double(double x);
template <>
double from_double<double>(double x) {
  return x;
}
template <>
Rational from_double<Rational>(double x) {
  return Rational::from_integral_double(x);
}

template <class S>
S misreport_value(const Misreport& m) {
  if constexpr (std::is_same_v<S, double>) {
    return m.value();
  } else {
    return Rational::from_integral_double(m.base) * Rational(m.num, m.den);
  }
}

// Mechanism outcome in original order after canonicalization and the fixed
// point filter, in scalar arithmetic S.
template <class S>
struct Pipeline {
  std::vector<S> payments;
  std::vector<S> eps;
  std::vector<bool> removed;
  S total_payment = S(0);
};

template <class S>
Pipeline<S> run_pipeline(const std::vector<S>& w, const std::vector<S>& v,
                         const S& budget, const MechanismVariant& variant) {
  const std::size_t n = w.size();
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  std::stable_sort(alive.begin(), alive.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  Pipeline<S> out;
  out.payments.assign(n, S(0));
  out.eps.assign(n, S(0));
  out.removed.assign(n, false);
  while (true) {
    S total = S(0);
    for (std::size_t i : alive) total += w[i];
    std::vector<std::size_t> next;
    for (std::size_t i : alive) {
      const S rest = total - w[i];
      if (rest > S(0) && !(w[i] * v[i] > budget * rest)) {
        next.push_back(i);
      } else {
        out.removed[i] = true;
      }
    }
    const bool changed = next.size() != alive.size();
    alive = std::move(next);
    if (!changed || alive.empty()) break;
  }
  if (alive.size() < 2) {
    std::fill(out.removed.begin(), out.removed.end(), true);
    return out;
  }
  std::vector<S> cw;
  std::vector<S> cv;
  for (std::size_t i : alive) {
    cw.push_back(w[i]);
    cv.push_back(v[i]);
  }
  const Allocation<S> alloc = allocate<S>(cw, cv, budget, variant, alive);
  const std::vector<S> eps = selection_epsilons<S>(cw, alloc.selected);
  for (std::size_t c = 0; c < alive.size(); ++c) {
    out.payments[alive[c]] = alloc.payments[c];
    out.eps[alive[c]] = eps[c];
    out.total_payment += alloc.payments[c];
  }
  return out;
}

template <class S>
void truthfulness_instance(const SweepConfig& config, std::size_t index,
                           const AuctionInstance& instance, Recorder& rec,
                           InstanceResult& out) {
  const std::size_t n = instance.size();
  std::vector<S> w;
  std::vector<S> v;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(from_double<S>(instance.abs_weight(i)));
    v.push_back(from_double<S>(instance.unit_costs()[i]));
  }
  const S budget = from_double<S>(instance.budget());
  constexpr bool exact = std::is_same_v<S, Rational>;
  const S zero = S(0);

  const Pipeline<S> truth = run_pipeline<S>(w, v, budget, config.variant);

  if constexpr (!exact) {
    const AuctionResult reference =
        run_auction(instance, FilterMode::kFixedPoint, config.variant);
    std::vector<double> mapped(n, 0.0);
    for (std::size_t c = 0; c < reference.to_original.size(); ++c) {
      mapped[reference.to_original[c]] = reference.outcome.payments[c];
    }
    rec.check(kTAgreement, mapped == truth.payments,
              "library pipeline and sweep pipeline disagree on payments");
  } else {
    rec.pass(kTAgreement);
  }

  const bool budget_ok =
      exact ? !(truth.total_payment > budget)
            : to_double(truth.total_payment) <=
                  to_double(budget) * (1.0 + kSweepTolerance);
  rec.check(kTBudget, budget_ok,
            "payments " + fmt(to_double(truth.total_payment)) + " exceed budget " +
                fmt(to_double(budget)));

  std::vector<S> utility(n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    const S cost = v[i] * truth.eps[i];
    utility[i] = truth.payments[i] - cost;
    bool ir_ok = true;
    if constexpr (exact) {
      ir_ok = !(utility[i] < zero);
    } else {
      ir_ok = utility[i] >= -kSweepTolerance * std::max(1.0, cost);
    }
    rec.check(kTIr, ir_ok,
              "payment " + fmt(to_double(truth.payments[i])) +
                  " below privacy cost " + fmt(to_double(cost)),
              i);
  }

  std::vector<S> reported = v;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Misreport& m : misreport_grid(instance, i)) {
      const S z = misreport_value<S>(m);
      reported[i] = z;
      const Pipeline<S> lie = run_pipeline<S>(w, reported, budget, config.variant);
      const S lie_utility = lie.payments[i] - v[i] * lie.eps[i];
      const S gain_s = lie_utility - utility[i];
      const double gain = to_double(gain_s);
      const bool ok = exact ? !(gain_s > zero) : gain <= kSweepTolerance;
      rec.check(kTTruthful, ok,
                "misreport raises utility by " + fmt(gain), i, to_double(z));
      if (gain_s > zero && gain > out.gain) {
        out.gain = gain;
        out.gain_witness = rec.make_witness("truthfulness",
                                            "utility gain " + fmt(gain), i,
                                            to_double(z));
      }
    }
    reported[i] = v[i];
  }
  (void)index;
}

void approximation_instance(const SweepConfig& config, std::size_t index,
                            const AuctionInstance& instance, Recorder& rec,
                            InstanceResult& out) {
  const AuctionResult auction =
      run_auction(instance, FilterMode::kFixedPoint, config.variant);
  const AuctionInstance& canonical = auction.auctioned;

  const BoundsReport bounds = opt_bounds_check(canonical, config.variant);
  out.has_ratio = true;
  out.ratio = bounds.ratio;
  out.uniform = bounds.uniform_weights;
  out.branch = auction.outcome.diagnostics.branch;
  const std::string ratio_text = "ratio " + fmt(bounds.ratio);
  rec.check(kAOptBelowFractional, bounds.opt_below_fractional,
            "OPT " + fmt(bounds.opt) + " above fractional " + fmt(bounds.fractional));
  rec.check(kAFive, bounds.five_approximation, ratio_text);
  if (bounds.uniform_weights) rec.check(kATwo, bounds.two_approximation, ratio_text);
  rec.check(kAEll, bounds.ell_at_least_k,
            "ell " + std::to_string(bounds.ell) + " below k " + std::to_string(bounds.k));
  rec.check(kANextWeight, bounds.next_weight_bound, "w([k+1]) bound fails");

  const FractionalSolution frac = fractional_optimum(canonical);
  const KktCertificate cert = kkt_certificate(canonical, frac);
  rec.check(kAKkt,
            cert.min_multiplier >= 0.0 &&
                cert.max_stationarity_residual <= kSweepTolerance &&
                cert.max_complementarity_residual <= kSweepTolerance,
            "stationarity " + fmt(cert.max_stationarity_residual) +
                ", complementarity " + fmt(cert.max_complementarity_residual) +
                ", min multiplier " + fmt(cert.min_multiplier));
  rec.check(kABudgetIdentity, cert.budget_residual <= kSweepTolerance,
            "budget identity residual " + fmt(cert.budget_residual));

  Rng rng(mix_seed(config.rng_seed ^ 0x5157A7E5ULL, index));
  std::vector<double> flipped = canonical.weights();
  for (double& x : flipped) {
    if (rng() & 1U) x = -x;
  }
  const AuctionInstance mirror(flipped, canonical.unit_costs(),
                               canonical.budget(), canonical.interval());
  const MechanismOutcome a = fair_inner_product(canonical, config.variant);
  const MechanismOutcome b = fair_inner_product(mirror, config.variant);
  rec.check(kASign,
            a.selected == b.selected && a.payments == b.payments &&
                a.diagnostics.k == b.diagnostics.k &&
                a.diagnostics.branch == b.diagnostics.branch,
            "outcome changes under a sign flip of the weights");

  if (bounds.uniform_weights) {
    std::vector<std::size_t> top(a.diagnostics.k);
    std::iota(top.begin(), top.end(), std::size_t{0});
    rec.check(kAUniformTopK, a.selected == top,
              "equal weights did not select the k cheapest");
  }
}

template <class Body>
VerificationReport run_sweep(const SweepConfig& config, const std::string& name,
                             std::span<const char* const> properties,
                             Body body) {
  config.validate();
  std::vector<InstanceResult> results(config.instance_count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= config.instance_count) return;
      InstanceResult& out = results[index];
      const AuctionInstance instance = generate_instance(config, index);
      Recorder rec(config, index, instance, out, properties);
      try {
        body(index, instance, rec, out);
        rec.pass(0);
      } catch (const std::exception& e) {
        rec.check(0, false, e.what());
      }
    }
  };
  const std::size_t threads =
      std::min(resolve_threads(config.threads),
               std::max<std::size_t>(1, config.instance_count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerificationReport report;
  report.sweep = name;
  report.config = config;
  report.instances = config.instance_count;
  for (const char* p : properties) report.properties.push_back({p, 0, 0});
  for (std::size_t index = 0; index < results.size(); ++index) {
    InstanceResult& r = results[index];
    for (std::size_t p = 0; p < r.counts.size(); ++p) {
      report.properties[p].passed += r.counts[p].passed;
      report.properties[p].failed += r.counts[p].failed;
    }
    for (Witness& w : r.witnesses) {
      if (report.witnesses.size() < kMaxWitnesses) {
        report.witnesses.push_back(std::move(w));
      }
    }
    if (r.has_ratio) {
      report.ratio_rows.push_back({index, r.ratio, r.branch});
      if (!report.worst_ratio_instance || r.ratio > report.worst_ratio) {
        report.worst_ratio = r.ratio;
        report.worst_ratio_instance = index;
      }
      if (r.uniform) {
        ++report.uniform_instances;
        report.worst_uniform_ratio = std::max(report.worst_uniform_ratio, r.ratio);
      }
    }
    if (r.gain_witness && r.gain > report.worst_gain) {
      report.worst_gain = r.gain;
      report.worst_deviation = std::move(r.gain_witness);
    }
  }
  return report;
}

nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json doc = {{"property", w.property},
                        {"master_seed", w.master_seed},
                        {"instance_index", w.instance_index},
                        {"instance_seed", w.instance_seed},
                        {"instance", w.instance},
                        {"detail", w.detail}};
  if (w.individual) doc["individual"] = *w.individual;
  if (w.misreport) doc["misreport"] = *w.misreport;
  return doc;
}

}  // namespace

std::size_t VerificationReport::failures() const {
  std::size_t total = 0;
  for (const auto& p : properties) total += p.failed;
  return total;
}

const PropertyCount* VerificationReport::property(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

VerificationReport run_truthfulness_sweep(const SweepConfig& config) {
  return run_sweep(
      config, "truthfulness", kTruthProperties,
      [&config](std::size_t index, const AuctionInstance& instance,
                Recorder& rec, InstanceResult& out) {
        if (config.arithmetic == Arithmetic::kRational) {
          truthfulness_instance<Rational>(config, index, instance, rec, out);
        } else {
          truthfulness_instance<double>(config, index, instance, rec, out);
        }
      });
}

VerificationReport run_approximation_sweep(const SweepConfig& config) {
  if (config.n_max > kMaxOracleSize) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "approximation sweep limited to n <= " +
                    std::to_string(kMaxOracleSize));
  }
  return run_sweep(
      config, "approximation", kApproxProperties,
      [&config](std::size_t index, const AuctionInstance& instance,
                Recorder& rec, InstanceResult& out) {
        approximation_instance(config, index, instance, rec, out);
      });
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json props = nlohmann::json::object();
  for (const auto& p : report.properties) {
    props[p.name] = {{"passed", p.passed}, {"failed", p.failed}};
  }
  nlohmann::json doc = {{"sweep", report.sweep},
                        {"config", sweep_config_to_json(report.config)},
                        {"instances", report.instances},
                        {"failures", report.failures()},
                        {"passed", report.passed()},
                        {"properties", props}};
  if (report.sweep == "approximation") {
    doc["worst_ratio"] = report.worst_ratio;
    if (report.worst_ratio_instance) {
      doc["worst_ratio_instance"] = *report.worst_ratio_instance;
    }
    doc["uniform_instances"] = report.uniform_instances;
    doc["worst_uniform_ratio"] = report.worst_uniform_ratio;
  } else {
    doc["worst_gain"] = report.worst_gain;
    if (report.worst_deviation) {
      doc["worst_deviation"] = witness_to_json(*report.worst_deviation);
    }
  }
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(witness_to_json(w));
  doc["witnesses"] = witnesses;
  return doc;
}

std::string ratio_rows_csv(const VerificationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "instance_id,ratio,branch\n";
  for (const auto& row : report.ratio_rows) {
    os << row.instance_id << ',' << row.ratio << ',' << to_string(row.branch)
       << '\n';
  }
  return os.str();
}

}  // namespace privauction
