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

#include "fedosov/transport.hpp"

namespace fedosov {

namespace {

ParamCoeff power(Param p, int k) {
  ParamExponents e{};
  e[std::size_t(p)] = k;
  return ParamCoeff::monomial(Complex(1), e);
}

int param_degree(const S3Field& u, Param p) {
  int d = 0;
  for (int i = 0; i < u.dim(); ++i)
    for (int j = i; j < u.dim(); ++j)
      for (int k = j; k < u.dim(); ++k)
        for (const auto& [mk, c] : u(i, j, k).terms()) d = std::max(d, mk.param(p));
  return d;
}

void check_cap(Param p, int degree) {
  int cap = ParamCaps::current().max_degree[std::size_t(p)];
  if (degree > cap)
    throw ParamCapError(std::string(param_name(p)) + "-degree " + std::to_string(degree) +
                            " exceeds the cap " + std::to_string(cap),
                        degree);
}

// Drops the extended flag after checking that no negative ν power survived.
WeylElement to_standard(const WeylElement& a) {
  if (!a.extended()) return a;
  std::vector<WeylElement::Entry> soup;
  for (const auto& r : a.runs()) {
    if (r.key.nu() < 0) throw std::logic_error("negative nu power in a section of W");
    for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({r.key.bits(), mk, c});
  }
  return WeylElement::from_entries(a.n(), a.order(), false, std::move(soup), a.truncated());
}

WeylElement one(int n, int order) {
  return WeylElement::from_scalar(n, order, ScalarFn::constant(n, Complex(1))).as_extended();
}

// Degree-d part of (1/ν) h∘v.
WeylElement h_over_nu_times(const WeylElement& h, const WeylElement& v, int lo, int hi) {
  const int N = v.order();
  WeylElement h2 = h.with_order(N + 2).as_extended();
  WeylElement v2 = v.with_order(N + 2);
  return circ(h2, v2, lo + 2, hi + 2).nu_shifted(-1).with_order(N);
}

} // namespace

ConnectionPath::ConnectionPath(SymplecticConnection base, std::vector<S3Field> coeffs)
    : base_(std::move(base)), coeffs_(std::move(coeffs)) {
  for (const auto& u : coeffs_)
    if (u.n() != base_.n()) throw std::invalid_argument("path coefficient over a different torus");
  check_cap(Param::t, degree());
}

SymplecticConnection ConnectionPath::family() const {
  S3Field off(base_.n());
  for (int j = 0; j < degree(); ++j) off += coeffs_[std::size_t(j)].times(power(Param::t, j + 1));
  return base_.shifted(off);
}

ConnectionDisk::ConnectionDisk(SymplecticConnection base, S3Field offset)
    : base_(std::move(base)), offset_(std::move(offset)) {
  if (offset_.n() != base_.n()) throw std::invalid_argument("disk offset over a different torus");
  check_cap(Param::t, param_degree(offset_, Param::t));
  check_cap(Param::s, param_degree(offset_, Param::s));
  if (!offset_.param_evaluate(Param::s, Rational(0)).is_zero())
    throw std::invalid_argument("disk boundary: nabla^{t0} differs from nabla");
  if (!offset_.param_evaluate(Param::t, Rational(0)).is_zero())
    throw std::invalid_argument("disk boundary: nabla^{0s} differs from nabla");
  if (!offset_.param_evaluate(Param::t, Rational(1)).is_zero())
    throw std::invalid_argument("disk boundary: nabla^{1s} differs from nabla");
}

ConnectionDisk ConnectionDisk::spanned(const SymplecticConnection& base, const S3Field& A,
                                       const S3Field& B) {
  ParamCoeff t = ParamCoeff::variable(Param::t), s = ParamCoeff::variable(Param::s);
  ParamCoeff f = s * t - s * t * t;
  return ConnectionDisk(base, A.times(f) + B.times(f * t));
}

SymplecticConnection ConnectionDisk::boundary() const {
  return base_.shifted(offset_.param_evaluate(Param::s, Rational(1)));
}

WeylElement alpha_along(const FedosovContext& ctx, Param p) {
  const int N = ctx.order();
  WeylElement src = gammabar(ctx.connection().u().param_diff(p), N) + ctx.r().param_diff(p);
  return ctx.d_inverse(src);
}

PathGenerator generator_h(const ConnectionPath& path, int order) {
  FedosovContext ctx = FedosovContext::solve(path.family(), order);
  WeylElement h = -alpha_along(ctx, Param::t);
  return PathGenerator{std::move(ctx), std::move(h)};
}

WeylElement series_inverse(const WeylElement& v) {
  const int n = v.n(), N = v.order();
  WeylElement w = v - one(n, N);
  if (w.min_degree() == 0) throw std::invalid_argument("series inverse needs v = 1 + (positive degree)");
  WeylElement u = one(n, N);
  for (int d = 1; d <= N; ++d) u -= circ(w.as_extended(), u, d, d);
  return u;
}

TransportElement solve_v(PathGenerator gen) {
  const int n = gen.ctx.n(), N = gen.ctx.order();
  if (!gen.h.is_zero() && gen.h.min_degree() < 3)
    throw std::logic_error("path generator has terms below total degree 3");
  WeylElement v = one(n, N);
  for (int d = 1; d <= N; ++d) {
    WeylElement step = h_over_nu_times(gen.h, v, d, d);
    v += step.param_integrate(Param::t);
  }
  check_cap(Param::t, v.param_degree(Param::t));
  WeylElement v_inv = series_inverse(v);
  return TransportElement{std::move(gen), std::move(v), std::move(v_inv)};
}

TransportElement solve_v(const ConnectionPath& path, int order) {
  return solve_v(generator_h(path, order));
}

WeylElement ode_residual(const TransportElement& te) {
  return te.v.param_diff(Param::t) - h_over_nu_times(te.gen.h, te.v, 0, te.v.order());
}

WeylElement transport(const TransportElement& te, const WeylElement& a) {
  return to_standard(circ(circ(te.v, a.as_extended()), te.v_inv));
}

TransportCheck transport_check(const TransportElement& te, const FedosovContext& base,
                               const ScalarFn& F, const ScalarFn& G) {
  const FedosovContext& ctx = te.gen.ctx;
  TransportCheck out;
  out.trusted_order = ctx.nu_order() - 1;
  WeylElement bf = transport(te, base.quantize(F));
  WeylElement bg = transport(te, base.quantize(G));
  out.flatness = ctx.D(bf);
  out.product = ctx.star(bf.symbol(), bg.symbol()).truncated(out.trusted_order);
  out.image = transport(te, base.quantize(base.star(F, G))).symbol().truncated(out.trusted_order);
  return out;
}

Holonomy holonomy_generator(const ConnectionDisk& disk, int order) {
  FedosovContext base = FedosovContext::solve(disk.base(), order);
  FedosovContext ctx = FedosovContext::solve(disk.family(), order);
  WeylElement at = alpha_along(ctx, Param::t);
  WeylElement as = alpha_along(ctx, Param::s);
  WeylElement R = as.param_diff(Param::t) - at.param_diff(Param::s) + commutator_over_nu(at, as);
  TransportElement w = solve_v(PathGenerator{ctx, -at});

  WeylElement integrand = to_standard(circ(circ(w.v_inv, R.as_extended()), w.v));
  WeylElement integral = integrand.param_integrate(Param::t).param_evaluate(Param::t, Rational(1));
  WeylElement w1 = w.v.param_evaluate(Param::t, Rational(1));
  WeylElement w1_inv = w.v_inv.param_evaluate(Param::t, Rational(1));
  WeylElement generator = to_standard(circ(circ(w1, integral.as_extended()), w1_inv));
  WeylElement direct = to_standard(circ(w1.param_diff(Param::s), w1_inv).nu_shifted(1));

  Holonomy h{base, ctx, at, as, R, w, integrand, generator, direct,
             generator - direct, WeylElement(), WeylElement()};
  h.integrand_flatness = base.D(integrand);
  h.generator_flatness = base.D(generator);
  return h;
}

FormalFunction heisenberg_flow(const FedosovContext& ctx, const FormalFunction& H,
                               const FormalFunction& F, int t_order, int sign) {
  if (t_order < 0) throw std::invalid_argument("negative t order");
  if (t_order > MonoKey::kMaxParamDegree)
    throw ParamCapError("t order " + std::to_string(t_order) + " exceeds the packed range",
                        t_order);
  ParamCaps caps = ParamCaps::current();
  caps.max_degree[std::size_t(Param::t)] = t_order;
  ParamCapScope scope(caps);
  const int k = ctx.nu_order();
  FormalFunction a = F.truncated(k);
  for (int it = 0; it < t_order; ++it) {
    FormalFunction rate = ctx.star_commutator_over_nu(H.truncated(k), a);
    if (sign < 0) rate = rate.scaled(Complex(-1));
    a = F.truncated(k) + rate.param_integrate(Param::t);
  }
  return a.truncated(k - 1);
}

namespace {

// [X, Y]★ = ν·σ((1/ν)[QX, QY]).
FormalFunction star_bracket(const FedosovContext& ctx, const FormalFunction& X,
                            const FormalFunction& Y) {
  return ctx.star_commutator_over_nu(X, Y).nu_shifted(1);
}

int valuation_or_top(const FormalFunction& F) {
  int v = F.valuation();
  return v < 0 ? F.order() + 1 : v;
}

std::vector<Rational> bernoulli(int m) {
  std::vector<Rational> b(std::size_t(m + 1));
  b[0] = Rational(1);
  for (int j = 1; j <= m; ++j) {
    Rational acc;
    Rational binom(1);
    for (int i = 0; i < j; ++i) {
      acc += binom * b[std::size_t(i)];
      binom = binom * Rational(j + 1 - i) / Rational(i + 1);
    }
    b[std::size_t(j)] = -acc / Rational(j + 1);
  }
  return b;
}

} // namespace

FormalFunction exp_extract(const FedosovContext& ctx, const FormalFunction& G, int order) {
  if (order > trusted_bracket_order(ctx))
    throw std::invalid_argument("requested order " + std::to_string(order) +
                                " exceeds the trusted order " +
                                std::to_string(trusted_bracket_order(ctx)));
  if (valuation_or_top(G) < 2) throw std::invalid_argument("generator must start at nu^2");
  FormalFunction K = G.truncated(order + 1).nu_shifted(-1).truncated(order);
  // Ω' = Σ_k B_k/k! ad_Ω^k K, Ω(0) = 0; ad_Ω^k K starts at ν^{2k+1}.
  const int kmax = std::max(0, (order - 1) / 2);
  auto b = bernoulli(kmax);
  FormalFunction omega(G.n(), order);
  if (order < 1) return omega;
  for (int it = 0; it <= kmax + 1; ++it) {
    FormalFunction rate = K;
    FormalFunction term = K;
    Rational fact(1);
    for (int k = 1; k <= kmax; ++k) {
      term = star_bracket(ctx, omega, term).truncated(order);
      fact = fact * Rational(k);
      if (!b[std::size_t(k)].is_zero()) rate += term.scaled(Complex(b[std::size_t(k)] / fact));
    }
    omega = rate.param_integrate(Param::s);
  }
  return omega.param_evaluate(Param::s, Rational(1));
}

FormalFunction apply_exponential(const FedosovContext& ctx, const FormalFunction& Gt,
                                 const FormalFunction& F) {
  const int k = ctx.nu_order();
  FormalFunction out = F.truncated(k);
  FormalFunction term = F.truncated(k);
  for (int j = 1; j <= k; ++j) {
    term = star_bracket(ctx, Gt.truncated(k), term).scaled(Complex(Rational(1, j)));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

FormalFunction ordered_exponential(const FedosovContext& ctx, const FormalFunction& G,
                                   const FormalFunction& F) {
  if (valuation_or_top(G) < 2) throw std::invalid_argument("generator must start at nu^2");
  const int k = ctx.nu_order();
  FormalFunction b = F.truncated(k);
  for (int it = 0; it <= k / 2 + 1; ++it)
    b = F.truncated(k) +
        ctx.star_commutator_over_nu(G.truncated(k), b).param_integrate(Param::s);
  return b.param_evaluate(Param::s, Rational(1));
}

ActionValue action_functional(const ConnectionDisk& disk, const ScalarFn& H, int order) {
  if (!H.mean().is_zero()) throw std::invalid_argument("action functional needs zero-mean H_t");
  Holonomy hol = holonomy_generator(disk, order);
  const int k = order / 2;
  const bool flat_disk = disk.offset().is_zero();
  // σR and σ(ν ∂_s w w⁻¹) are exact through ν^{N/2}; Ω̃ at ν^j needs ρ through j + 2.
  TraceDensity rho_base = trace_density(hol.base);
  TraceDensity rho_disk = flat_disk ? rho_base : trace_density(hol.ctx, -1, -1, std::max(0, k - 2));
  TraceDensity rho_edge =
      flat_disk ? rho_base : trace_density(FedosovContext::solve(disk.boundary(), order));

  ActionValue out;
  out.omega_part = omega_tilde(rho_disk, hol.curvature.symbol().truncated(k))
                       .param_integrate(Param::t, Rational(0), Rational(1))
                       .param_integrate(Param::s, Rational(0), Rational(1));
  out.holonomy_part = omega_tilde(rho_base, hol.direct.symbol().truncated(k))
                          .param_integrate(Param::s, Rational(0), Rational(1));
  out.mu_part = -mu_tilde(rho_edge, H).param_integrate(Param::t, Rational(0), Rational(1));
  int loop_top = std::min(out.omega_part.top(), out.holonomy_part.top());
  out.omega_part = out.omega_part.truncated(loop_top);
  out.holonomy_part = out.holonomy_part.truncated(loop_top);
  out.difference = out.omega_part - out.holonomy_part;
  out.trusted_order = std::min(loop_top, out.mu_part.top());
  out.value = out.omega_part.truncated(out.trusted_order) + out.mu_part.truncated(out.trusted_order);
  out.value_holonomy =
      out.holonomy_part.truncated(out.trusted_order) + out.mu_part.truncated(out.trusted_order);
  return out;
}

} // namespace fedosov
