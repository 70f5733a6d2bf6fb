// Copyright 2026 The kmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace kmetric::cli {

enum class Command { Analyze, Sequence, Verify, Join };
enum class Format { Json, Csv, Plain };

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBounded = 3;
inline constexpr int kExitViolation = 4;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  Command command = Command::Analyze;
  std::vector<std::string> families;  // in command-line order
  std::vector<std::string> inputs;
  std::optional<std::size_t> k;
  std::optional<std::size_t> k_max;
  std::optional<std::string> t;  // exact rationals, parsed late
  std::optional<std::string> s;
  Format format = Format::Plain;
  std::uint64_t seed = 0;
  double budget_secs = 60.0;
  bool parallel = false;
  std::size_t threads = 0;
  std::optional<std::size_t> random;
  std::optional<std::size_t> n;
  std::string suite = "all";
  std::vector<long long> radii;
  bool relabel = false;    // join: prefix labels with "L." / "R."
  bool bisectors = false;  // analyze: list every bisector
  bool timings = false;    // include wall time (breaks byte-identical output)
};

/// Flag value, then KMETRIC_BUDGET_SECS, then 60 s.
double resolve_budget(std::optional<double> flag);

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sequence(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_join(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps kmetric::Error to kExitInput.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and runs it. Used by main() and the tests.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kmetric::cli
