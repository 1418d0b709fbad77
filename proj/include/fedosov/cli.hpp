// Copyright 2026 The fedosov-torus Authors
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

#ifndef FEDOSOV_CLI_HPP
#define FEDOSOV_CLI_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedosov/formal_scalar.hpp"
#include "fedosov/geometry.hpp"
#include "fedosov/weyl.hpp"

namespace fedosov::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kCap = 3, kAssertion = 4 };

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// How the connection is chosen: drawn from the seed, flat, or given.
enum class ConnectionMode { random, flat, explicit_terms };

struct JobConfig {
  int n = 1;
  int N = 6;
  int t_cap = 64;
  int s_cap = 64;
  int flow_order = 2; // t-degree of the Heisenberg flow
  int freq_cutoff = -1;
  int test_cutoff = -1;
  SymmetrizePolicy symmetrization = SymmetrizePolicy::strict_validate;
  ConnectionMode connection_mode = ConnectionMode::random;
  std::optional<S3Field> connection;
  // Absent entries are drawn from the seed.
  std::optional<S3Field> A, B, C;
  std::optional<ScalarFn> H, F, G;
  std::string command = "suite";
  std::string out;
  json source; // the parsed config, echoed in reports
};

/// Parses and validates a config object. Throws ConfigError.
JobConfig parse_config(const json& j);
/// Reads a file and parses it. Throws ConfigError.
JobConfig load_config(const std::string& path);

const std::vector<std::string>& command_names();

/// Runs cfg.command (or the suite). The report has the keys
/// "command", "inputs", "results", "assertions" and "verdict".
json run(const JobConfig& cfg, std::uint64_t seed);

/// One entry per acceptance criterion: {"id", "title", "assertions", "verdict"}.
json run_suite(const JobConfig& cfg, std::uint64_t seed);

/// kOk when every executed assertion passed, kAssertion otherwise.
int exit_code(const json& report);

/// Canonical serialization (sorted keys, two-space indent, trailing newline).
std::string dump(const json& report);

// Exact renderings used in reports.
std::string render(const Rational& q);
std::string render(const ParamCoeff& c);
std::string render(const ScalarFn& f);
std::string render_pi(const ParamCoeff& c, int pi_power);
json render(const FormalFunction& F, bool trim_trailing_zeros = false);
json render(const FormalScalar& s);
std::string render_residual(const WeylElement& a);

} // namespace fedosov::cli

#endif // FEDOSOV_CLI_HPP
