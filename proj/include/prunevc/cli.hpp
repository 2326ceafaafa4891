//
// Copyright 2026 The prunevc Authors
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

#ifndef PRUNEVC_CLI_HPP_
#define PRUNEVC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace prunevc::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kCheckFailed = 3;
inline constexpr int kVacuous = 4;
inline constexpr int kPrunedToFalse = 10;

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prunevc::cli

#endif  // PRUNEVC_CLI_HPP_
