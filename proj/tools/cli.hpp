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

#ifndef PRIVAUCTION_TOOLS_CLI_HPP_
#define PRIVAUCTION_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace privauction::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kEmpty = 2;
inline constexpr int kPropertyFailure = 3;

// Runs the command line `args` (without the program name). The report goes
// to `out`, diagnostics and error documents to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace privauction::cli

#endif  // PRIVAUCTION_TOOLS_CLI_HPP_
