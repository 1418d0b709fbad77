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

// Runs the verification battery at desk scale and prints one PASS/FAIL line
// per acceptance criterion. Every comparison is exact (tolerance 0).

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fedosov/cli.hpp"

using namespace fedosov;
using cli::json;

int main(int argc, char** argv) {
  CLI::App app{"Acceptance battery"};
  int order = 8;
  std::uint64_t seed = 1;
  std::string report_path;
  app.add_option("--order", order, "truncation order N");
  app.add_option("--seed", seed, "seed for the connection and test data");
  app.add_option("--report", report_path, "also write the full JSON report here");
  CLI11_PARSE(app, argc, argv);

  json config = {{"n", 1}, {"N", order}, {"connection", "random"}, {"command", "suite"}};
  auto start = std::chrono::steady_clock::now();
  json report = cli::run_suite(cli::parse_config(config), seed);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all = true;
  for (const auto& c : report.at("criteria")) {
    bool pass = c.at("verdict") == "pass";
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.at("id").get<int>() << ": "
              << c.at("title").get<std::string>() << "  [exact, tolerance 0]";
    if (!pass) {
      std::cout << "  verdict=" << c.at("verdict").get<std::string>();
      for (const auto& [name, v] : c.at("assertions").items())
        if (v != "pass" && v.get<std::string>().rfind("skipped", 0) != 0) std::cout << " " << name;
    }
    std::cout << "\n";
  }
  if (report.contains("error"))
    std::cout << "error: " << report["error"]["message"].get<std::string>() << "\n";
  std::cout << "N = " << order << ", seed = " << seed << ", " << int(seconds) << " s\n";
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << cli::dump(report);
  }
  return all ? 0 : 1;
}
