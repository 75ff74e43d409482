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

#include "cli.hpp"

#include <CLI/CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>

#include "privauction/error.hpp"
#include "privauction/estimator.hpp"
#include "privauction/instance_io.hpp"
#include "privauction/mechanism.hpp"
#include "privauction/optimal.hpp"
#include "privauction/predictors.hpp"
#include "privauction/rational.hpp"
#include "privauction/serialize.hpp"
#include "privauction/verify.hpp"

namespace privauction::cli {
namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string output = "json";
  std::string arithmetic = "float";
};

struct RunFlags {
  std::string instance;
  bool compare_opt = false;
  std::string database;
  std::string filter = "fixed-point";
};

struct VerifyFlags {
  std::string config;
  std::string mutate;
  std::size_t instances = 0;
  std::string sweep = "all";
};

struct WeightFlags {
  std::string features;
  bool id_column = false;
  std::string query;
  std::string query_csv;
  std::string method;
  std::size_t k = 1;
  double lambda = 1.0;
  double bandwidth = 1.0;
  std::string kernel = "gaussian";
  std::string costs;
  std::optional<double> budget;
  double interval_min = 0.0;
  double interval_max = 1.0;
  double drop_threshold = kDefaultDropThreshold;
};

// Failure of a checked property; exit code 3.
struct PropertyFailure {
  json witnesses;
};

int exit_code(ErrorCode code) {
  return code == ErrorCode::kEmptyInstance ? kEmpty : kInputError;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

FilterMode parse_filter(const std::string& s) {
  if (s == "once") return FilterMode::kOnce;
  if (s == "fixed-point") return FilterMode::kFixedPoint;
  throw Error(ErrorCode::kValidation, "unknown filter mode '" + s + "'");
}

std::vector<std::string> exact_payments(const AuctionResult& result) {
  const AuctionInstance& inst = result.auctioned;
  std::vector<Rational> w;
  std::vector<Rational> v;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    w.push_back(Rational::from_double(inst.abs_weight(i)));
    v.push_back(Rational::from_double(inst.unit_costs()[i]));
  }
  const Rational budget = Rational::from_double(inst.budget());
  const Allocation<Rational> alloc = allocate<Rational>(w, v, budget, {}, result.to_original);
  std::vector<std::string> out(result.original_size, "0");
  for (std::size_t c = 0; c < alloc.payments.size(); ++c) {
    out[result.to_original[c]] = alloc.payments[c].to_string();
  }
  return out;
}

std::vector<double> read_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("database")) doc = doc.at("database");
  if (!doc.is_array()) throw Error(ErrorCode::kParse, path + ": expected an array");
  std::vector<double> out;
  for (const auto& x : doc) {
    if (!x.is_number()) throw Error(ErrorCode::kParse, path + ": non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

int cmd_run(const Globals& g, const RunFlags& f, std::ostream& out) {
  const LoadedInstance loaded = load_instance_file(f.instance);
  const AuctionInstance& instance = loaded.instance;
  const AuctionResult result = run_auction(instance, parse_filter(f.filter));

  if (g.output == "csv") {
    out << outcome_to_csv(result);
    return kOk;
  }
  json doc = outcome_to_json(result);
  if (g.arithmetic == "rational") doc["payments_exact"] = exact_payments(result);

  if (f.compare_opt) {
    const OracleSolution oracle = brute_force_opt(result.auctioned);
    const FractionalSolution frac = fractional_optimum(result.auctioned);
    doc["oracle"] = oracle_to_json(oracle, result);
    doc["fractional"] = fractional_to_json(frac, result);
    doc["ratio"] = oracle.objective / result.outcome.objective();
  }

  std::optional<Database> database = loaded.database;
  if (!f.database.empty()) {
    database = Database(read_database(f.database), instance.interval());
  }
  if (database) {
    if (database->size() != instance.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "database has " + std::to_string(database->size()) +
                      " entries for " + std::to_string(instance.size()) +
                      " individuals");
    }
    std::vector<double> canonical(result.to_original.size());
    for (std::size_t c = 0; c < canonical.size(); ++c) {
      canonical[c] = (*database)[result.to_original[c]];
    }
    const Lef lef = result.outcome.dclef.to_lef();
    const double estimate =
        evaluate(lef, Database(canonical, instance.interval()), g.seed);
    double exact = 0.0;
    // Statistic over the auctioned population; removed individuals are
    // outside the estimator.
    for (std::size_t i : result.to_original) {
      exact += instance.weights()[i] * (*database)[i];
    }
    doc["estimate"] = {{"value", estimate},
                       {"seed", g.seed},
                       {"statistic", exact},
                       {"sigma", lef.sigma()}};
  }
  emit(out, doc);
  return kOk;
}

int cmd_verify(const Globals& g, const VerifyFlags& f, std::ostream& out) {
  SweepConfig config;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorCode::kParse, "cannot open " + f.config);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, f.config + ": " + e.what());
    }
    config = sweep_config_from_json(doc);
  }
  if (g.seed_given) config.rng_seed = g.seed;
  if (g.arithmetic == "rational") config.arithmetic = Arithmetic::kRational;
  if (!f.mutate.empty()) config.variant = parse_mutation(f.mutate);
  if (f.instances > 0) config.instance_count = f.instances;
  config.validate();

  if (f.sweep != "all" && f.sweep != "truthfulness" && f.sweep != "approximation") {
    throw Error(ErrorCode::kValidation, "unknown sweep '" + f.sweep + "'");
  }
  json doc = json::object();
  json witnesses = json::array();
  bool passed = true;
  std::optional<VerificationReport> approx;
  if (f.sweep != "approximation") {
    const VerificationReport r = run_truthfulness_sweep(config);
    doc["truthfulness"] = report_to_json(r);
    passed = passed && r.passed();
    for (const auto& w : doc["truthfulness"]["witnesses"]) witnesses.push_back(w);
  }
  if (f.sweep != "truthfulness") {
    SweepConfig ac = config;
    // Rational mode only changes the truthfulness sweep.
    ac.arithmetic = Arithmetic::kFloat;
    approx = run_approximation_sweep(ac);
    doc["approximation"] = report_to_json(*approx);
    passed = passed && approx->passed();
    for (const auto& w : doc["approximation"]["witnesses"]) witnesses.push_back(w);
  }
  doc["passed"] = passed;

  if (g.output == "csv") {
    if (approx) out << ratio_rows_csv(*approx);
  } else {
    emit(out, doc);
  }
  if (!passed) throw PropertyFailure{witnesses};
  return kOk;
}

int cmd_weights(const WeightFlags& f, std::ostream& out, std::ostream& err) {
  const FeatureTable table = read_feature_csv_file(f.features, f.id_column);
  std::vector<double> query;
  if (!f.query.empty() && !f.query_csv.empty()) {
    throw Error(ErrorCode::kValidation, "give --query or --query-csv, not both");
  }
  if (!f.query.empty()) {
    query = parse_number_list(f.query);
  } else if (!f.query_csv.empty()) {
    const FeatureTable q = read_feature_csv_file(f.query_csv, f.id_column);
    if (q.rows != 1) throw Error(ErrorCode::kParse, "query CSV must have one row");
    query = q.data;
  } else {
    throw Error(ErrorCode::kValidation, "a query is required (--query or --query-csv)");
  }
  const FeatureSet features(table.data, table.rows, table.cols, query);

  Kernel kernel = GaussianKernel{f.bandwidth};
  if (f.kernel == "linear") {
    kernel = LinearKernel{};
  } else if (f.kernel != "gaussian") {
    throw Error(ErrorCode::kValidation, "unknown kernel '" + f.kernel + "'");
  }

  std::vector<double> weights;
  json extra = json::object();
  if (f.method == "knn") {
    weights = knn_weights(features, f.k);
  } else if (f.method == "nw" || f.method == "nadaraya-watson") {
    weights = nadaraya_watson_weights(features, kernel);
  } else if (f.method == "ridge") {
    weights = ridge_weights(features, f.lambda);
  } else if (f.method == "kernel" || f.method == "kernel-regression") {
    const KernelRegressionResult r = kernel_regression_weights(features, kernel, f.lambda);
    weights = r.weights;
    extra["condition_number"] = r.condition_number;
    if (r.ill_conditioned) {
      err << json{{"warning", "IllConditioned"},
                  {"condition_number", r.condition_number}}
                 .dump()
          << '\n';
    }
  } else {
    throw Error(ErrorCode::kValidation, "unknown method '" + f.method + "'");
  }

  const DroppedWeights kept = drop_negligible(weights, f.drop_threshold);
  if (f.costs.empty() != !f.budget.has_value()) {
    throw Error(ErrorCode::kValidation, "--costs and --budget go together");
  }
  if (!f.costs.empty()) {
    if (kept.weights.empty()) {
      throw Error(ErrorCode::kEmptyInstance, "every weight was dropped");
    }
    std::vector<double> costs = parse_number_list(f.costs);
    if (costs.size() != kept.weights.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::to_string(costs.size()) + " costs for " +
                      std::to_string(kept.weights.size()) + " surviving weights");
    }
    const AuctionInstance instance(kept.weights, costs, *f.budget,
                                   ValueInterval(f.interval_min, f.interval_max));
    json doc = instance_to_json(instance);
    doc["source_index"] = kept.kept;
    doc["dropped"] = kept.dropped;
    emit(out, doc);
    return kOk;
  }
  json doc = {{"method", f.method},
              {"weights", weights},
              {"kept", kept.kept},
              {"dropped", kept.dropped},
              {"auction_weights", kept.weights}};
  doc.update(extra);
  emit(out, doc);
  return kOk;
}

FilterResult filtered_canonical(const std::string& path) {
  const LoadedInstance loaded = load_instance_file(path);
  auto [canonical, permutation] = canonicalize(loaded.instance);
  FilterResult f = filter_payable(canonical, FilterMode::kFixedPoint);
  for (auto& i : f.kept) i = permutation.to_original(i);
  for (auto& i : f.removed) i = permutation.to_original(i);
  std::sort(f.removed.begin(), f.removed.end());
  return f;
}

json remap(const json& doc, const std::vector<std::size_t>& kept, std::size_t size,
           const std::vector<std::string>& keys) {
  json out = doc;
  for (const auto& key : keys) {
    json arr = json::array();
    for (std::size_t i = 0; i < size; ++i) arr.push_back(0);
    for (std::size_t c = 0; c < kept.size(); ++c) arr[kept[c]] = doc[key][c];
    out[key] = arr;
  }
  return out;
}

int cmd_oracle(const Globals& g, const std::string& path, std::ostream& out) {
  const FilterResult f = filtered_canonical(path);
  const std::size_t size = f.kept.size() + f.removed.size();
  const OracleSolution sol = brute_force_opt(f.instance);
  json doc = remap(oracle_to_json(sol), f.kept, size, {"x", "payments"});
  doc["removed"] = f.removed;
  if (g.output == "csv") {
    out << "index,x,payment\n";
    for (std::size_t i = 0; i < size; ++i) {
      out << i << ',' << doc["x"][i].dump() << ',' << doc["payments"][i].dump() << '\n';
    }
    return kOk;
  }
  emit(out, doc);
  return kOk;
}

int cmd_fractional(const Globals& g, const std::string& path, std::ostream& out) {
  const FilterResult f = filtered_canonical(path);
  const std::size_t size = f.kept.size() + f.removed.size();
  const FractionalSolution sol = fractional_optimum(f.instance);
  const KktCertificate cert = kkt_certificate(f.instance, sol);
  json doc = remap(fractional_to_json(sol), f.kept, size, {"x_star", "payments"});
  doc["removed"] = f.removed;
  doc["kkt"] = {{"lambda", cert.lambda},
                {"max_stationarity_residual", cert.max_stationarity_residual},
                {"max_complementarity_residual", cert.max_complementarity_residual},
                {"budget_residual", cert.budget_residual},
                {"min_multiplier", cert.min_multiplier}};
  if (g.output == "csv") {
    out << "index,x_star,payment\n";
    for (std::size_t i = 0; i < size; ++i) {
      out << i << ',' << doc["x_star"][i].dump() << ',' << doc["payments"][i].dump()
          << '\n';
    }
    return kOk;
  }
  emit(out, doc);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Privacy auctions for weighted linear predictors", "privauction"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--output", g.output, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--arithmetic", g.arithmetic, "Arithmetic for exact re-runs")
      ->check(CLI::IsMember({"float", "rational"}));

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run the mechanism on an instance");
  run_cmd->add_option("instance", run.instance, "Instance JSON")->required();
  run_cmd->add_flag("--compare-opt", run.compare_opt,
                    "Also report the oracle, the fractional optimum and the ratio");
  run_cmd->add_option("--database", run.database,
                      "JSON array of private entries to evaluate the estimator on");
  run_cmd->add_option("--filter", run.filter, "once or fixed-point")
      ->check(CLI::IsMember({"once", "fixed-point"}));

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property sweeps");
  verify_cmd->add_option("config", verify.config, "Sweep config JSON");
  verify_cmd->add_option("--mutate", verify.mutate, "Deliberately broken variant");
  verify_cmd->add_option("--instances", verify.instances, "Override instance count");
  verify_cmd->add_option("--sweep", verify.sweep, "all, truthfulness or approximation");

  WeightFlags weights;
  auto* weights_cmd = app.add_subcommand("weights", "Derive weights from features");
  weights_cmd->add_option("features", weights.features, "Feature CSV")->required();
  weights_cmd->add_flag("--id-column", weights.id_column, "First CSV column is an id");
  weights_cmd->add_option("--query", weights.query, "Query as a comma separated list");
  weights_cmd->add_option("--query-csv", weights.query_csv, "Single-row query CSV");
  weights_cmd->add_option("--method", weights.method, "knn, nw, ridge or kernel")
      ->required();
  weights_cmd->add_option("--k", weights.k, "Neighbours for knn");
  weights_cmd->add_option("--lambda", weights.lambda, "Regularization");
  weights_cmd->add_option("--bandwidth", weights.bandwidth, "Gaussian bandwidth");
  weights_cmd->add_option("--kernel", weights.kernel, "gaussian or linear");
  weights_cmd->add_option("--costs", weights.costs, "Unit costs of surviving individuals");
  weights_cmd->add_option("--budget", weights.budget, "Budget");
  weights_cmd->add_option("--interval-min", weights.interval_min, "Lower data bound");
  weights_cmd->add_option("--interval-max", weights.interval_max, "Upper data bound");
  weights_cmd->add_option("--drop-threshold", weights.drop_threshold,
                          "Relative magnitude below which weights are dropped");

  std::string oracle_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum");
  oracle_cmd->add_option("instance", oracle_path, "Instance JSON")->required();

  std::string fractional_path;
  auto* fractional_cmd = app.add_subcommand("fractional", "Fractional optimum");
  fractional_cmd->add_option("instance", fractional_path, "Instance JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (run_cmd->parsed()) return cmd_run(g, run, out);
    if (verify_cmd->parsed()) return cmd_verify(g, verify, out);
    if (weights_cmd->parsed()) return cmd_weights(weights, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(g, oracle_path, out);
    if (fractional_cmd->parsed()) return cmd_fractional(g, fractional_path, out);
  } catch (const PropertyFailure& f) {
    err << json{{"error", "PropertyFailure"}, {"witnesses", f.witnesses}}.dump() << '\n';
    return kPropertyFailure;
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
        << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace privauction::cli
