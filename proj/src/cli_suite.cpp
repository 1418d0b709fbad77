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
#include <functional>
#include <random>

#include "cli_internal.hpp"
#include "fedosov/checks.hpp"
#include "fedosov/moment.hpp"
#include "fedosov/transport.hpp"

namespace fedosov::cli {

namespace {

constexpr int kSeeds = 5;

struct Criterion {
  int id;
  const char* title;
  std::function<void(const Inputs&, std::uint64_t, Outcome&)> body;
};

void merge(Outcome& into, const std::string& prefix, const Outcome& from) {
  for (const auto& [k, v] : from.assertions.items()) into.assertions[prefix + "/" + k] = v;
  into.results[prefix] = from.results;
}

Inputs with_seed_connection(const Inputs& base, std::uint64_t seed) {
  Inputs in = base;
  std::mt19937_64 rng(seed);
  in.conn = SymplecticConnection(checks::random_s3(rng, base.n, 1, 1));
  in.flat = false;
  return in;
}

Inputs at_order(const Inputs& base, int N) {
  Inputs in = base;
  in.N = std::min(base.N, N);
  return in;
}

FormalFunction series(const ScalarFn& f, int order) { return FormalFunction::from_scalar(f, order); }

// −(1/6) A_{ijk} y^i y^j y^k over all index triples, built monomial by monomial.
WeylElement cubic_oracle(const S3Field& A, int N) {
  WeylElement out(A.n(), N);
  const int D = A.dim();
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k) {
        YExponents e{};
        ++e[std::size_t(i)];
        ++e[std::size_t(j)];
        ++e[std::size_t(k)];
        out += WeylElement::monomial(A.n(), N, WeylKey(0, e, 0),
                                     A(i, j, k).scaled(Complex(Rational(-1, 6))));
      }
  return out;
}

void flat_baseline(const Inputs& base, std::uint64_t, Outcome& o) {
  Inputs in = base;
  in.conn = SymplecticConnection::flat(base.n);
  in.flat = true;
  for (const char* cmd : {"solve-r", "star", "trace-density"}) merge(o, cmd, run_command(cmd, in));
}

void solver(const Inputs& base, std::uint64_t seed, Outcome& o) {
  for (int i = 1; i <= kSeeds; ++i) {
    Inputs in = with_seed_connection(base, seed + std::uint64_t(i));
    merge(o, "seed+" + std::to_string(i), run_command("solve-r", in));
  }
}

void quantization(const Inputs& base, std::uint64_t seed, Outcome& o) {
  for (int i = 1; i <= kSeeds; ++i) {
    Inputs in = with_seed_connection(base, seed + std::uint64_t(i));
    std::mt19937_64 rng(seed + 100 + std::uint64_t(i));
    FedosovContext ctx = FedosovContext::solve(in.conn, in.N);
    FormalFunction F(in.n, ctx.nu_order());
    F[0] = checks::random_real_function(rng, in.n, 1, 2);
    F[1] = checks::random_real_function(rng, in.n, 1, 2);
    WeylElement Q = ctx.quantize(F);
    std::string p = "seed+" + std::to_string(i) + "/";
    o.check(p + "symbol_of_quantization", Q.symbol().truncated(ctx.nu_order()) == F);
    o.check(p + "quantization_is_flat", ctx.D(Q).degree_range(0, in.N - 1).is_zero());
  }
}

void star_axioms(const Inputs& base, std::uint64_t, Outcome& o) {
  if (base.flat) {
    o.skip("star", "needs a nonflat connection");
    return;
  }
  merge(o, "star", run_command("star", base));
}

void alpha_contract(const Inputs& base, std::uint64_t, Outcome& o) {
  FedosovContext ctx = FedosovContext::solve(base.conn, base.N);
  ParamCapScope caps(base.t_cap, base.s_cap);
  Variation v = vary(ctx, base.A);
  const WeylElement& a = v.alpha.alpha;
  o.check("symbol_zero", a.symbol().is_zero());
  o.check("D_alpha_is_source", (ctx.D(a) - v.alpha.source).degree_range(0, base.N - 1).is_zero());
  o.check("lowest_term_is_minus_delta_inv_abar", a.degree_part(3) == -delta_inv(gammabar(base.A, base.N)));
  o.check("lowest_term_matches_monomial_oracle", a.degree_part(3) == cubic_oracle(base.A, base.N));
}

void curvature(const Inputs& base, std::uint64_t, Outcome& o) {
  merge(o, "curvature", run_command("curvature", base));
}

void leibniz(const Inputs& base, std::uint64_t, Outcome& o) {
  FedosovContext ctx = FedosovContext::solve(base.conn, base.N);
  ParamCapScope caps(base.t_cap, base.s_cap);
  Variation v = vary(ctx, base.A);
  const int k = trusted_bracket_order(ctx);
  FormalFunction F = series(base.F, ctx.nu_order()), G = series(base.G, ctx.nu_order());
  FormalFunction FG;
  {
    JetScope scope({v.param});
    FG = v.jet.star(F, G);
  }
  FormalFunction lhs = formal_connection_apply(v, FG);
  FormalFunction rhs = ctx.star(formal_connection_apply(v, F), G) + ctx.star(F, formal_connection_apply(v, G));
  o.results["residual"] = render((lhs - rhs).truncated(k), true);
  o.check("leibniz", lhs.truncated(k) == rhs.truncated(k));
}

void trace(const Inputs& base, std::uint64_t, Outcome& o) {
  for (const char* cmd : {"trace-density", "omega-tilde", "bianchi"})
    merge(o, cmd, run_command(cmd, base));
}

void moment(const Inputs& base, std::uint64_t, Outcome& o) {
  merge(o, "moment-residual", run_command("moment-residual", base));
}

void transport(const Inputs& base, std::uint64_t, Outcome& o) {
  Inputs in = at_order(base, 4);
  merge(o, "transport", run_command("transport", in));
  merge(o, "holonomy", run_command("holonomy", in));
}

void heisenberg(const Inputs& base, std::uint64_t, Outcome& o) {
  merge(o, "heisenberg", run_command("heisenberg", at_order(base, 8)));
}

void action(const Inputs& base, std::uint64_t, Outcome& o) {
  Inputs in = at_order(base, 6);
  merge(o, "action", run_command("action", in));
  if (in.N < 4) {
    o.skip("constant_disk", "order too low");
    o.skip("zero_hamiltonian", "order too low");
    return;
  }
  ParamCapScope caps(in.t_cap, in.s_cap);
  // The constant disk has no offset to integrate over, so it runs at full order.
  ActionValue still = action_functional(ConnectionDisk(in.conn, S3Field(in.n)), in.Ht, in.N);
  TorusIntegral hm = integrate_torus(in.Ht * cahen_gutt_mu(in.conn));
  ParamCoeff expected = -hm.value.integrate(Param::t, Rational(0), Rational(1));
  o.results["constant_disk_value"] = render(still.value);
  o.results["constant_disk_trusted_order"] = still.trusted_order;
  o.check("constant_disk/omega_part_zero", still.omega_part.is_zero());
  o.check("constant_disk/value_is_mu_part", still.value == still.mu_part.truncated(still.trusted_order));
  if (still.trusted_order < 0)
    o.skip("constant_disk/leading_term", "order too low");
  else
    o.check("constant_disk/leading_term",
            still.value.coefficient(0) == expected && still.value.pi_power() == hm.pi_power);
  ActionValue idle =
      action_functional(ConnectionDisk::spanned(in.conn, in.A0, in.B0), ScalarFn(in.n), in.N);
  o.results["zero_hamiltonian_value"] = render(idle.value);
  o.check("zero_hamiltonian/value_is_omega_part",
          idle.value == idle.omega_part.truncated(idle.trusted_order));
  o.check("zero_hamiltonian/difference_zero", idle.difference.is_zero());
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "flat baseline", flat_baseline},
      {2, "Fedosov solver", solver},
      {3, "quantization", quantization},
      {4, "star axioms", star_axioms},
      {5, "alpha contract", alpha_contract},
      {6, "curvature", curvature},
      {7, "compatibility (Leibniz)", leibniz},
      {8, "trace density, Omega-tilde, Bianchi", trace},
      {9, "moment map", moment},
      {10, "transport and holonomy", transport},
      {11, "Heisenberg flow and exponential", heisenberg},
      {12, "action functional", action},
  };
  return list;
}

} // namespace

json run_suite(const JobConfig& cfg, std::uint64_t seed) {
  Inputs base = resolve(cfg, seed);
  json report;
  report["command"] = "suite";
  report["seed"] = std::to_string(seed);
  report["config"] = cfg.source;
  json list = json::array();
  bool all = true;
  bool halted = false;
  auto record = [&](int id, const std::string& title, const Outcome& o, const std::string& verdict) {
    json c;
    c["id"] = id;
    c["title"] = title;
    c["assertions"] = o.assertions;
    c["results"] = o.results;
    c["verdict"] = verdict;
    list.push_back(c);
    all = all && verdict == "pass";
  };
  for (const auto& cr : criteria()) {
    Outcome o;
    if (halted) {
      record(cr.id, cr.title, o, "not run");
      continue;
    }
    try {
      cr.body(base, seed, o);
      record(cr.id, cr.title, o, o.passed() ? "pass" : "fail");
    } catch (const std::exception& e) {
      bool cap = dynamic_cast<const ParamCapError*>(&e) != nullptr;
      report["error"] = {{"kind", cap ? "cap" : "other"},
                         {"criterion", cr.id},
                         {"message", e.what()}};
      record(cr.id, cr.title, o, "error");
      halted = true;
    }
  }
  Outcome det;
  if (halted) {
    record(13, "determinism", det, "not run");
  } else {
    JobConfig probe = cfg;
    probe.command = "trace-density";
    std::string first = dump(run(probe, seed));
    std::string second = dump(run(probe, seed));
    det.check("byte_identical_reports", first == second);
    det.results["bytes"] = first.size();
    record(13, "determinism", det, det.passed() ? "pass" : "fail");
  }
  report["criteria"] = list;
  report["verdict"] = all ? "pass" : "fail";
  return report;
}

} // namespace fedosov::cli
