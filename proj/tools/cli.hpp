// Copyright 2026 The opminer Authors
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

#ifndef OPMINER_TOOLS_CLI_HPP_
#define OPMINER_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace opminer::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kInputError = 2;
inline constexpr int kBudgetExceeded = 3;

// Runs the opminer command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace opminer::cli

#endif  // OPMINER_TOOLS_CLI_HPP_
