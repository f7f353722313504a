// Copyright 2026 The qpolar Authors
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

#ifndef QPOLAR_CLI_COMMANDS_HPP_
#define QPOLAR_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qpolar::cli {

/// Runs one command line (without the program name). Reports go to out (or
/// the --output file), one-line diagnoses to err. Returns the exit code:
/// 0 all verdicts pass, 1 a verdict failed, 2 usage error or unknown
/// command, 3 unreadable file, 4 malformed matrix or instance, 5 invalid value.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CommandCoverage {
  std::string command;
  std::vector<std::string> operations;
};

/// Library operations reached by each command.
const std::vector<CommandCoverage>& coverage_table();

}  // namespace qpolar::cli

#endif  // QPOLAR_CLI_COMMANDS_HPP_
