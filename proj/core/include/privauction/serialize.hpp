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

#ifndef PRIVAUCTION_SERIALIZE_HPP_
#define PRIVAUCTION_SERIALIZE_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "privauction/mechanism.hpp"
#include "privauction/optimal.hpp"

namespace privauction {

// Outcome document, every index and vector in the order of the input
// instance (0-based):
//   {"O", "payments", "k", "i_star", "branch", "p_hat", "r", "removed",
//    "dclef": {"x", "sigma", "epsilons", "distortion"}}
// Removed individuals appear with x = 0, epsilon = 0 and payment 0.
nlohmann::json outcome_to_json(const AuctionResult& result);

// One row per individual: index,selected,payment,epsilon,removed.
std::string outcome_to_csv(const AuctionResult& result);

// Oracle and fractional solutions for the auctioned instance of `result`,
// mapped back to input order.
nlohmann::json oracle_to_json(const OracleSolution& oracle,
                              const AuctionResult& result);
nlohmann::json fractional_to_json(const FractionalSolution& solution,
                                  const AuctionResult& result);

// Same documents for a canonical instance run directly.
nlohmann::json oracle_to_json(const OracleSolution& oracle);
nlohmann::json fractional_to_json(const FractionalSolution& solution);

}  // namespace privauction

#endif  // PRIVAUCTION_SERIALIZE_HPP_
