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

// fedosov: runs one named computation (or the verification suite) from a
// JSON config and writes an exact JSON report.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fedosov/cli.hpp"
#include "fedosov/transport.hpp"

using namespace fedosov;
using cli::json;

namespace {

int report_error(bool as_json, const char* kind, int code, const std::string& message) {
  if (as_json) {
    json err;
    err["error"] = {{"kind", kind}, {"exit_code", code}, {"message", message}};
    std::cout << cli::dump(err);
  } else {
    std::cerr << "error (" << kind << "): " << message << "\n";
  }
  return code;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::ConfigError("cannot read config \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cli::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fedosov quantization on the torus"};
  std::string config_path, command, out;
  int order = -1;
  std::uint64_t seed = 1;
  bool json_errors = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--command", command, "command name (overrides the config)");
  app.add_option("--order", order, "truncation order N (overrides the config)");
  app.add_option("--out", out, "report path (default: stdout)");
  app.add_option("--seed", seed, "seed for randomly drawn inputs");
  app.add_flag("--json-errors", json_errors, "print errors as JSON objects on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(json_errors, "config", cli::kConfig, e.what());
  }

  try {
    json j = config_path.empty() ? json::object() : read_json(config_path);
    if (!command.empty()) j["command"] = command;
    if (order >= 0) j["N"] = order;
    cli::JobConfig cfg = cli::parse_config(j);
    if (!out.empty()) cfg.out = out;

    json report = cli::run(cfg, seed);
    std::string text = cli::dump(report);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) return report_error(json_errors, "io", cli::kOther, "cannot write " + cfg.out);
      f << text;
    }
    int code = cli::exit_code(report);
    if (code == cli::kAssertion && !json_errors) std::cerr << "some assertions failed\n";
    return code;
  } catch (const cli::ConfigError& e) {
    return report_error(json_errors, "config", cli::kConfig, e.what());
  } catch (const ParamCapError& e) {
    return report_error(json_errors, "cap", cli::kCap, e.what());
  } catch (const std::exception& e) {
    return report_error(json_errors, "other", cli::kOther, e.what());
  }
}
