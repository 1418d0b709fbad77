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

#ifndef FEDOSOV_CLI_INTERNAL_HPP
#define FEDOSOV_CLI_INTERNAL_HPP

#include <cstdint>
#include <string>

#include "fedosov/cli.hpp"
#include "fedosov/fedosov.hpp"

namespace fedosov::cli {

/// Config values with the gaps filled from the seed.
struct Inputs {
  int n = 1;
  int N = 6;
  int t_cap = 64;
  int s_cap = 64;
  int flow_order = 2;
  int freq_cutoff = -1;
  int test_cutoff = -1;
  bool flat = false;
  SymplecticConnection conn{S3Field(1)};
  S3Field A{1}, B{1}, C{1};
  S3Field A0{1}, B0{1}; // constant directions for disks
  ScalarFn H{1}, F{1}, G{1};
  ScalarFn Ht{1}; // time-dependent Hamiltonian for the action
  bool A_given = false, B_given = false, H_given = false;
};

Inputs resolve(const JobConfig& cfg, std::uint64_t seed);
json render(const S3Field& u);

struct Outcome {
  json results = json::object();
  json assertions = json::object();
  json inputs = json::object();

  void check(const std::string& name, bool ok) { assertions[name] = ok ? "pass" : "fail"; }
  void skip(const std::string& name, const std::string& why) {
    assertions[name] = "skipped: " + why;
  }
  bool passed() const;
};

/// Runs one named command on resolved inputs.
Outcome run_command(const std::string& name, const Inputs& in);

} // namespace fedosov::cli

#endif // FEDOSOV_CLI_INTERNAL_HPP
