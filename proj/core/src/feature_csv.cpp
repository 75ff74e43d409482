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

#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "privauction/error.hpp"
#include "privauction/predictors.hpp"

namespace privauction {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

FeatureTable read_feature_csv(std::istream& in, bool id_column) {
  FeatureTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split(line);
    std::string id;
    if (id_column) {
      id = cells.front();
      cells.erase(cells.begin());
    }
    std::vector<double> row;
    bool numeric = true;
    for (const auto& c : cells) {
      double x = 0.0;
      if (!parse_number(c, x)) {
        numeric = false;
        break;
      }
      row.push_back(x);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": non-numeric feature");
    }
    first = false;
    if (row.empty()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": no features");
    }
    if (table.rows == 0) {
      table.cols = row.size();
    } else if (row.size() != table.cols) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(table.cols) + " features, got " +
                                         std::to_string(row.size()));
    }
    table.data.insert(table.data.end(), row.begin(), row.end());
    if (id_column) table.ids.push_back(id);
    ++table.rows;
  }
  if (table.rows == 0) throw Error(ErrorCode::kParse, "feature CSV has no rows");
  return table;
}

FeatureTable read_feature_csv_file(const std::filesystem::path& path,
                                   bool id_column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  return read_feature_csv(in, id_column);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& cell : split(text)) {
    double x = 0.0;
    if (!parse_number(cell, x)) {
      throw Error(ErrorCode::kParse, "bad number '" + cell + "' in list");
    }
    out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "empty number list");
  return out;
}

}  // namespace privauction
