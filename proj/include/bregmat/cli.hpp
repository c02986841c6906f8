// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BREGMAT_CLI_HPP
#define BREGMAT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bregmat/report.hpp"

namespace bregmat {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitViolation = 3,
  kExitNumerical = 4,
};

/// Parsed command line. Unset optionals take the per-subcommand defaults.
struct RunConfig {
  std::string subcommand;
  std::string family;  // --f
  std::string x_path;
  std::string y_path;
  std::string state_path;
  std::optional<int> dim;
  std::vector<int> dims;
  std::vector<double> q_grid;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;  // empty: standard output
  std::string method = "closed";
  bool all_methods = false;
  bool saturating = false;
  std::optional<std::uint64_t> random;
  std::string criterion;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::optional<Report> report;  // absent on usage or numerical errors
  std::string error;
};

/// Dispatches to the named suite. Never throws for library errors; they are
/// mapped onto exit codes (2 bad input, 4 numerical failure). A completed
/// suite exits 3 when any record fails.
RunOutcome run(const RunConfig& config);

/// Comma-separated numbers; std::invalid_argument on malformed input.
std::vector<double> parse_number_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Worker count from BREGMAT_THREADS (unset or 0: automatic).
unsigned threads_from_environment();

/// Full command line entry: parses args (argv[0] is the program name),
/// runs, writes the report to --out or `out` and diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bregmat

#endif  // BREGMAT_CLI_HPP
