// Copyright 2026 The qdec Authors
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

// Config-driven experiment runner behind the qdec command line tool.
//
// A config is one JSON object, version 1:
//   {"version": 1, "command": "decouple-run", "fixture": "bell-identity",
//    "source": {"kind": "clifford1q"}, "seed": 7, "output": {"json": "r.json"}}
// Unknown keys, and keys that do not apply to the command, are rejected.

#ifndef QDEC_CLI_HPP
#define QDEC_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdec/circuits.hpp"
#include "qdec/decouple.hpp"

namespace qdec::cli {

inline constexpr int kConfigVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and other unexpected failures
  kExitInvalidConfig = 2,
  kExitNumeric = 3,
  kExitViolation = 4,
};

struct ExperimentReport {
  nlohmann::json body;                 // deterministic given config and seed
  std::vector<circuits::SweepRow> rows;  // sweep commands only
  bool violation = false;
  std::string violation_message;
};

/// Checks the schema and fills defaults. Throws ParameterError.
nlohmann::json normalize_config(const nlohmann::json& config);

/// Built-in instances: bell-identity, bell-trace, product-mixed, measurement.
decouple::Instance fixture(const std::string& name);
std::vector<std::string> fixture_names();

ExperimentReport run(const nlohmann::json& config);

/// Runs the config, writes its outputs and prints the report to `out`.
/// Failures are printed to `err` as {"error": kind, "message": ...}.
int run_and_emit(const nlohmann::json& config, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits.
double round_sig(double x);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const std::vector<circuits::SweepRow>& rows);
nlohmann::json load_report(const std::filesystem::path& path);

enum class Format { Json, Csv };
void emit_report(const ExperimentReport& report, Format format, const std::filesystem::path& path);

/// Self-contained SVG line chart of a sweep with a log-scale y axis.
std::string plot_svg(const std::vector<circuits::SweepRow>& rows);
void emit_plot(const std::vector<circuits::SweepRow>& rows, const std::filesystem::path& path);

/// Writes to a temporary sibling, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Maps an exception to {kind, exit code}.
std::pair<std::string, int> classify(const std::exception& e);

std::string build_id();

}  // namespace qdec::cli

#endif  // QDEC_CLI_HPP
