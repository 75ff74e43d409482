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

#include "privauction/serialize.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "privauction/estimator.hpp"

namespace privauction {
namespace {

template <class T>
std::vector<T> spread(const std::vector<T>& canonical,
                      const std::vector<std::size_t>& to_original,
                      std::size_t size, T fill) {
  std::vector<T> out(size, fill);
  for (std::size_t c = 0; c < canonical.size(); ++c) {
    out[to_original[c]] = canonical[c];
  }
  return out;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  return id;
}

nlohmann::json oracle_doc(const OracleSolution& oracle,
                          const std::vector<std::size_t>& map, std::size_t size) {
  std::vector<int> x(oracle.x.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = oracle.x[i] ? 1 : 0;
  return {{"x", spread(x, map, size, 0)},
          {"objective", oracle.objective},
          {"payments", spread(oracle.payments, map, size, 0.0)}};
}

nlohmann::json fractional_doc(const FractionalSolution& s,
                              const std::vector<std::size_t>& map,
                              std::size_t size) {
  return {{"x_star", spread(s.x_star, map, size, 0.0)},
          {"payments", spread(s.payments, map, size, 0.0)},
          {"ell", s.ell},
          {"objective", s.objective}};
}

}  // namespace

nlohmann::json outcome_to_json(const AuctionResult& result) {
  const MechanismOutcome& out = result.outcome;
  const auto& map = result.to_original;
  const std::size_t size = result.original_size;

  std::vector<std::size_t> chosen;
  for (std::size_t c : out.selected) chosen.push_back(map[c]);
  std::sort(chosen.begin(), chosen.end());

  std::vector<int> x(out.dclef.size());
  for (std::size_t c = 0; c < x.size(); ++c) x[c] = out.dclef.is_selected(c) ? 1 : 0;
  const EpsilonVector eps = epsilons(out.dclef);

  nlohmann::json dclef = {{"x", spread(x, map, size, 0)},
                          {"sigma", out.dclef.sigma()},
                          {"distortion", distortion(out.dclef)}};
  if (eps.unbounded) {
    dclef["epsilons"] = nullptr;
  } else {
    dclef["epsilons"] = spread(eps.values, map, size, 0.0);
  }

  const MechanismDiagnostics& d = out.diagnostics;
  nlohmann::json doc = {{"O", chosen},
                        {"payments", spread(out.payments, map, size, 0.0)},
                        {"k", d.k},
                        {"i_star", map[d.i_star]},
                        {"branch", to_string(d.branch)},
                        {"removed", result.removed},
                        {"dclef", dclef}};
  doc["p_hat"] = d.p_hat ? nlohmann::json(*d.p_hat) : nlohmann::json(nullptr);
  doc["r"] = d.r ? nlohmann::json(map[*d.r]) : nlohmann::json(nullptr);
  return doc;
}

std::string outcome_to_csv(const AuctionResult& result) {
  const nlohmann::json doc = outcome_to_json(result);
  std::vector<bool> removed(result.original_size, false);
  for (std::size_t i : result.removed) removed[i] = true;
  std::ostringstream os;
  os.precision(17);
  os << "index,selected,payment,epsilon,removed\n";
  for (std::size_t i = 0; i < result.original_size; ++i) {
    const auto& eps = doc["dclef"]["epsilons"];
    os << i << ',' << doc["dclef"]["x"][i].get<int>() << ','
       << doc["payments"][i].get<double>() << ',';
    if (eps.is_null()) {
      os << "inf";
    } else {
      os << eps[i].get<double>();
    }
    os << ',' << (removed[i] ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json oracle_to_json(const OracleSolution& oracle,
                              const AuctionResult& result) {
  return oracle_doc(oracle, result.to_original, result.original_size);
}

nlohmann::json fractional_to_json(const FractionalSolution& solution,
                                  const AuctionResult& result) {
  return fractional_doc(solution, result.to_original, result.original_size);
}

nlohmann::json oracle_to_json(const OracleSolution& oracle) {
  return oracle_doc(oracle, identity(oracle.x.size()), oracle.x.size());
}

nlohmann::json fractional_to_json(const FractionalSolution& solution) {
  return fractional_doc(solution, identity(solution.x_star.size()),
                        solution.x_star.size());
}

}  // namespace privauction
