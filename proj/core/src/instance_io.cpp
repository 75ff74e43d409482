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

#include "privauction/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "privauction/error.hpp"

namespace privauction {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) parse_fail(std::string("missing field '") + field + "'");
  return *it;
}

double number_field(const json& value, const std::string& context) {
  if (!value.is_number()) parse_fail(context + ": expected a number");
  return value.get<double>();
}

std::vector<double> number_array(const json& value, const std::string& field) {
  if (!value.is_array()) {
    parse_fail("field '" + field + "': expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_field(
        value[i], "field '" + field + "' index " + std::to_string(i)));
  }
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

LoadedInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("instance document must be a JSON object");
  std::vector<double> weights = number_array(require(doc, "weights"), "weights");
  std::vector<double> costs =
      number_array(require(doc, "unit_costs"), "unit_costs");
  const double budget = number_field(require(doc, "budget"), "field 'budget'");
  const json& interval = require(doc, "interval");
  if (!interval.is_object()) parse_fail("field 'interval': expected an object");
  const ValueInterval range(
      number_field(require(interval, "min"), "field 'interval.min'"),
      number_field(require(interval, "max"), "field 'interval.max'"));

  AuctionInstance instance(std::move(weights), std::move(costs), budget, range);
  std::optional<Database> database;
  if (auto it = doc.find("database"); it != doc.end() && !it->is_null()) {
    std::vector<double> entries = number_array(*it, "database");
    if (entries.size() != instance.size()) {
      throw Error(ErrorCode::kValidation,
                  "database length differs from the number of individuals");
    }
    database.emplace(std::move(entries), instance.interval());
  }
  return LoadedInstance{std::move(instance), std::move(database)};
}

LoadedInstance load_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail("malformed JSON at line " + std::to_string(line_of(text, e.byte)) +
               ": " + e.what());
  }
  return instance_from_json(doc);
}

LoadedInstance load_instance(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return load_instance(text);
}

LoadedInstance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open instance file '" + path.string() + "'");
  return load_instance(in);
}

json instance_to_json(const AuctionInstance& instance,
                      const Database* database) {
  json doc;
  doc["weights"] = instance.weights();
  doc["unit_costs"] = instance.unit_costs();
  doc["budget"] = instance.budget();
  doc["interval"] = {{"min", instance.interval().r_min()},
                     {"max", instance.interval().r_max()}};
  if (database != nullptr) doc["database"] = database->entries();
  return doc;
}

void save_instance(std::ostream& out, const AuctionInstance& instance,
                   const Database* database) {
  out << instance_to_json(instance, database).dump(2) << '\n';
}

}  // namespace privauction
