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

#ifndef PRIVAUCTION_INSTANCE_IO_HPP_
#define PRIVAUCTION_INSTANCE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "privauction/instance.hpp"

namespace privauction {

struct LoadedInstance {
  AuctionInstance instance;
  std::optional<Database> database;
};

// Instance document:
//   {"weights":[...], "unit_costs":[...], "budget": b,
//    "interval":{"min": a, "max": b}, "database":[...]}
// "database" is optional. Malformed JSON raises Error(kParse) naming the
// line; a well-formed document that breaks an invariant raises
// Error(kValidation).
LoadedInstance load_instance(std::istream& in);
LoadedInstance load_instance(const std::string& text);
LoadedInstance load_instance_file(const std::filesystem::path& path);

nlohmann::json instance_to_json(const AuctionInstance& instance,
                                const Database* database = nullptr);
LoadedInstance instance_from_json(const nlohmann::json& doc);

void save_instance(std::ostream& out, const AuctionInstance& instance,
                   const Database* database = nullptr);

}  // namespace privauction

#endif  // PRIVAUCTION_INSTANCE_IO_HPP_
