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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fedosov/cli.hpp"

namespace fedosov::cli {

namespace {

const std::set<std::string> kTopKeys = {
    "n",       "N",           "t_cap",       "s_cap", "flow_order", "freq_cutoff",
    "test_cutoff", "symmetrization", "connection", "A", "B",     "C",
    "H",       "F",           "G",           "command", "out"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) fail(where + ": unknown key \"" + k + "\"");
}

int get_int(const json& j, const std::string& key, int lo, int hi, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail("\"" + key + "\" must be an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    fail("\"" + key + "\" must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return int(x);
}

Rational get_rational(const json& entry, const std::string& key, const std::string& where) {
  if (!entry.contains(key)) return Rational(0);
  const json& v = entry.at(key);
  if (!v.is_string()) fail(where + ": \"" + key + "\" must be a rational string like \"-3/7\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(where + ": bad rational \"" + v.get<std::string>() + "\" (" + e.what() + ")");
  }
}

Frequency get_frequency(const json& entry, int n, const std::string& where) {
  Frequency k{};
  if (!entry.contains("frequency")) return k;
  const json& v = entry.at("frequency");
  if (!v.is_array() || int(v.size()) != 2 * n)
    fail(where + ": \"frequency\" must list " + std::to_string(2 * n) + " integers");
  for (int j = 0; j < 2 * n; ++j) {
    if (!v[std::size_t(j)].is_number_integer()) fail(where + ": frequency entries must be integers");
    long long x = v[std::size_t(j)].get<long long>();
    if (x < -16 || x > 16) fail(where + ": frequencies are limited to |k| <= 16");
    k[std::size_t(j)] = int(x);
  }
  return k;
}

ScalarFn mode(int n, const json& entry, const std::string& where, bool allow_t) {
  Frequency k = get_frequency(entry, n, where);
  Complex c(get_rational(entry, "re", where), get_rational(entry, "im", where));
  ScalarFn f = ScalarFn::exponential(n, k, c);
  if (allow_t && entry.contains("t_power")) {
    const json& p = entry.at("t_power");
    if (!p.is_number_integer() || p.get<long long>() < 0 || p.get<long long>() > 8)
      fail(where + ": \"t_power\" must be an integer in [0, 8]");
    for (long long i = 0; i < p.get<long long>(); ++i) f = f.times(ParamCoeff::variable(Param::t));
  }
  return f;
}

ScalarFn parse_function(int n, const json& spec, const std::string& name, bool allow_t) {
  if (!spec.is_array()) fail("\"" + name + "\" must be a list of Fourier modes");
  std::set<std::string> keys = {"frequency", "re", "im"};
  if (allow_t) keys.insert("t_power");
  ScalarFn f(n);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::string where = name + "[" + std::to_string(i) + "]";
    check_keys(spec[i], keys, where);
    f += mode(n, spec[i], where, allow_t);
  }
  return f;
}

S3Field parse_field(int n, const json& spec, const std::string& name, SymmetrizePolicy policy) {
  if (!spec.is_array()) fail("\"" + name + "\" must be a list of terms");
  std::map<std::array<int, 3>, ScalarFn> parts;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::string where = name + "[" + std::to_string(i) + "]";
    const json& e = spec[i];
    check_keys(e, {"indices", "frequency", "re", "im"}, where);
    if (!e.contains("indices") || !e.at("indices").is_array() || e.at("indices").size() != 3)
      fail(where + ": \"indices\" must be a triple");
    std::array<int, 3> idx{};
    for (int a = 0; a < 3; ++a) {
      const json& v = e.at("indices")[std::size_t(a)];
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= 2 * n)
        fail(where + ": indices must lie in [0, " + std::to_string(2 * n - 1) + "]");
      idx[std::size_t(a)] = int(v.get<long long>());
    }
    auto it = parts.try_emplace(idx, ScalarFn(n)).first;
    it->second += mode(n, e, where, false);
  }
  std::vector<S3Field::Entry> entries;
  for (const auto& [idx, f] : parts) entries.push_back({idx[0], idx[1], idx[2], f});
  try {
    return S3Field::from_entries(n, entries, policy);
  } catch (const std::exception& e) {
    fail("\"" + name + "\": " + e.what());
  }
}

void require_real(const S3Field& u, const std::string& name) {
  for (int i = 0; i < u.dim(); ++i)
    for (int j = i; j < u.dim(); ++j)
      for (int k = j; k < u.dim(); ++k)
        if (!u(i, j, k).is_real_valued()) fail("\"" + name + "\" must be real-valued");
}

} // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "solve-r",  "star",     "curvature", "trace-density", "omega-tilde", "moment-residual",
      "bianchi",  "transport", "holonomy", "heisenberg",    "action",      "suite"};
  return names;
}

JobConfig parse_config(const json& j) {
  check_keys(j, kTopKeys, "config");
  JobConfig cfg;
  cfg.source = j;
  cfg.n = get_int(j, "n", 1, 2, 1);
  cfg.N = get_int(j, "N", 3, 12, 6);
  cfg.t_cap = get_int(j, "t_cap", 0, 64, 64);
  cfg.s_cap = get_int(j, "s_cap", 0, 64, 64);
  cfg.flow_order = get_int(j, "flow_order", 1, 8, 2);
  cfg.freq_cutoff = get_int(j, "freq_cutoff", -1, 16, -1);
  cfg.test_cutoff = get_int(j, "test_cutoff", -1, 16, -1);

  if (j.contains("symmetrization")) {
    const json& p = j.at("symmetrization");
    if (p == "strict-validate")
      cfg.symmetrization = SymmetrizePolicy::strict_validate;
    else if (p == "auto-symmetrize")
      cfg.symmetrization = SymmetrizePolicy::auto_symmetrize;
    else
      fail("\"symmetrization\" must be \"strict-validate\" or \"auto-symmetrize\"");
  }

  if (j.contains("connection")) {
    const json& c = j.at("connection");
    if (c == "flat") {
      cfg.connection_mode = ConnectionMode::flat;
      cfg.connection = S3Field(cfg.n);
    } else if (c == "random") {
      cfg.connection_mode = ConnectionMode::random;
    } else {
      cfg.connection_mode = ConnectionMode::explicit_terms;
      cfg.connection = parse_field(cfg.n, c, "connection", cfg.symmetrization);
      require_real(*cfg.connection, "connection");
    }
  }
  for (const char* name : {"A", "B", "C"})
    if (j.contains(name)) {
      S3Field f = parse_field(cfg.n, j.at(name), name, cfg.symmetrization);
      require_real(f, name);
      (name[0] == 'A' ? cfg.A : name[0] == 'B' ? cfg.B : cfg.C) = std::move(f);
    }
  if (j.contains("H")) {
    cfg.H = parse_function(cfg.n, j.at("H"), "H", true);
    if (!cfg.H->is_real_valued()) fail("\"H\" must be real-valued");
  }
  if (j.contains("F")) cfg.F = parse_function(cfg.n, j.at("F"), "F", false);
  if (j.contains("G")) cfg.G = parse_function(cfg.n, j.at("G"), "G", false);

  if (j.contains("command")) {
    if (!j.at("command").is_string()) fail("\"command\" must be a string");
    cfg.command = j.at("command").get<std::string>();
  }
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    fail("unknown command \"" + cfg.command + "\"");
  if (j.contains("out")) {
    if (!j.at("out").is_string()) fail("\"out\" must be a string");
    cfg.out = j.at("out").get<std::string>();
  }
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config \"" + path + "\"");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

std::string render(const Rational& q) { return q.to_string(); }

std::string render(const ParamCoeff& c) { return c.to_string(); }

std::string render(const ScalarFn& f) {
  if (f.max_abs_frequency() == 0) return render(f.mean());
  return f.to_string();
}

std::string render_pi(const ParamCoeff& c, int pi_power) {
  if (c.is_zero()) return "0";
  std::string body = c.terms().size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
  if (pi_power == 0) return body;
  return "pi^" + std::to_string(pi_power) + " * " + body;
}

json render(const FormalFunction& F, bool trim_trailing_zeros) {
  int top = F.order();
  if (trim_trailing_zeros)
    while (top > 0 && F[top].is_zero()) --top;
  json out = json::array();
  for (int k = 0; k <= top; ++k) out.push_back(render(F[k]));
  return out;
}

json render(const FormalScalar& s) {
  json out;
  out["text"] = s.to_string();
  json coeffs = json::object();
  for (int k = s.valuation(); k <= s.top(); ++k) {
    std::string c = render_pi(s.coefficient(k), s.pi_power());
    if (s.inv_two_pi_nu() != 0 && c != "0")
      c = "(2*pi*nu)^" + std::to_string(-s.inv_two_pi_nu()) + " * " + c;
    coeffs["nu^" + std::to_string(k)] = c;
  }
  out["coefficients"] = coeffs;
  return out;
}

std::string render_residual(const WeylElement& a) { return a.is_zero() ? "0" : a.to_string(); }

int exit_code(const json& report) {
  if (report.contains("error")) return report["error"]["kind"] == "cap" ? kCap : kOther;
  return report.at("verdict") == "pass" ? kOk : kAssertion;
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

} // namespace fedosov::cli
