// Copyright 2026 The qfac Authors
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

#ifndef QFAC_CLI_H
#define QFAC_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace qfac {

/// Exit codes of the command-line tool.
inline constexpr int kExitAffirmative = 0;  // accepted, equivalent, analysis ran clean
inline constexpr int kExitNegative = 1;     // rejected, inequivalent, obstruction found
inline constexpr int kExitUsage = 2;        // usage, parse, validation or I/O error

/// Runs the tool on `args` (program name excluded). The report is buffered and
/// written to `out` once; diagnostics go to `err`.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qfac

#endif  // QFAC_CLI_H
