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

#include "fedosov/moment.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace fedosov {

namespace {

ParamCaps jet_caps(std::initializer_list<Param> params) {
  ParamCaps caps = ParamCaps::current();
  for (Param p : params) caps.max_degree[std::size_t(p)] = 1;
  return caps;
}

ParamCoeff var(Param p) { return ParamCoeff::variable(p); }

// 4^n mean((F ρ)_k) for k = 0..top.
std::vector<ParamCoeff> pairing(const FormalFunction& F, const FormalFunction& rho, int top) {
  const int n = rho.n();
  const Complex vol(Rational(std::int64_t(1) << (2 * n)));
  std::vector<ParamCoeff> out;
  for (int k = 0; k <= top; ++k) {
    ParamCoeff acc;
    for (int j = 0; j <= k; ++j) {
      if (j > F.order() || k - j > rho.order()) continue;
      if (F[j].is_zero() || rho[k - j].is_zero()) continue;
      acc += (F[j] * rho[k - j]).mean();
    }
    out.push_back(acc * vol);
  }
  return out;
}

int lowest_nonzero(const FormalFunction& F) {
  int v = F.valuation();
  return v < 0 ? F.order() + 1 : v;
}

} // namespace

JetScope::JetScope(std::initializer_list<Param> params) : scope_(jet_caps(params)) {}

FormalFunction jet_derivative(const FormalFunction& F, Param p) {
  return F.param_diff(p).param_evaluate(p, Rational(0));
}

WeylElement jet_derivative(const WeylElement& a, Param p) { return a.param_coefficient(p, 1); }

FormalFunction bracket_symbol(const WeylElement& a, const WeylElement& b) {
  return commutator_over_nu_symbol(a, b).truncated(std::max(0, a.order() / 2 - 1));
}

Variation vary(const FedosovContext& base, const TangentS3& A, Param p) {
  JetScope scope({p});
  const int N = base.order();
  FedosovContext jet =
      FedosovContext::solve(base.connection().shifted(A.times(var(p))), N);
  WeylElement source = gammabar(A, N) + jet.r().param_coefficient(p, 1);
  WeylElement a = base.d_inverse(source);
  return Variation{base, std::move(jet), A, p, AlphaForm{std::move(a), std::move(source)}};
}

AlphaForm alpha(const SymplecticConnection& c, const TangentS3& A, int order) {
  return vary(FedosovContext::solve(c, order), A).alpha;
}

FormalFunction formal_connection_apply(const Variation& v, const FormalFunction& F) {
  JetScope scope({v.param});
  const int k = trusted_bracket_order(v.base);
  FormalFunction F0 = F.param_evaluate(v.param, Rational(0));
  return jet_derivative(F, v.param).truncated(k) +
         bracket_symbol(v.alpha.alpha, v.base.quantize(F0));
}

WeylElement formal_connection_lift(const Variation& v, const FormalFunction& F) {
  JetScope scope({v.param});
  FormalFunction F0 = F.param_evaluate(v.param, Rational(0));
  return jet_derivative(v.jet.quantize(F), v.param) +
         commutator_over_nu(v.alpha.alpha, v.base.quantize(F0));
}

CurvatureValue curvature_R(const FedosovContext& ctx, const TangentS3& A, const TangentS3& B) {
  JetScope scope({Param::t, Param::u});
  const int N = ctx.order();
  FedosovContext both = FedosovContext::solve(
      ctx.connection().shifted(A.times(var(Param::t)) + B.times(var(Param::u))), N);
  CurvatureValue cv{WeylElement(ctx.n(), N), FormalFunction(ctx.n(), N / 2),
                    both.at_zero(Param::u), both.at_zero(Param::t),
                    WeylElement(), WeylElement(), WeylElement(), WeylElement()};
  cv.alpha_b_along_a =
      cv.ctx_a.d_inverse(gammabar(B, N) + both.r().param_coefficient(Param::u, 1));
  cv.alpha_a_along_b =
      cv.ctx_b.d_inverse(gammabar(A, N) + both.r().param_coefficient(Param::t, 1));
  cv.alpha_a = cv.alpha_a_along_b.param_evaluate(Param::u, Rational(0));
  cv.alpha_b = cv.alpha_b_along_a.param_evaluate(Param::t, Rational(0));
  WeylElement d_alpha = cv.alpha_b_along_a.param_coefficient(Param::t, 1) -
                        cv.alpha_a_along_b.param_coefficient(Param::u, 1);
  cv.R = d_alpha + commutator_over_nu(cv.alpha_a, cv.alpha_b);
  cv.symbol = cv.R.symbol().truncated(N / 2);
  return cv;
}

CurvatureValue curvature_R(const SymplecticConnection& c, const TangentS3& A, const TangentS3& B,
                           int order) {
  return curvature_R(FedosovContext::solve(c, order), A, B);
}

FormalFunction curvature_operator(const CurvatureValue& cv, const FormalFunction& F) {
  JetScope scope({Param::t, Param::u});
  FedosovContext base = cv.ctx_a.at_zero(Param::t);
  // 𝒟_B F along ∇ + tA, then 𝒟_A of that section; and symmetrically.
  FormalFunction DbF = bracket_symbol(cv.alpha_b_along_a, cv.ctx_a.quantize(F));
  FormalFunction DaF = bracket_symbol(cv.alpha_a_along_b, cv.ctx_b.quantize(F));
  FormalFunction DbF0 = DbF.param_evaluate(Param::t, Rational(0));
  FormalFunction DaF0 = DaF.param_evaluate(Param::u, Rational(0));
  FormalFunction ab = jet_derivative(DbF, Param::t) + bracket_symbol(cv.alpha_a, base.quantize(DbF0));
  FormalFunction ba = jet_derivative(DaF, Param::u) + bracket_symbol(cv.alpha_b, base.quantize(DaF0));
  return (ab - ba).truncated(trusted_bracket_order(base));
}

FormalFunction curvature_commutator(const FedosovContext& ctx, const CurvatureValue& cv,
                                    const FormalFunction& F) {
  return bracket_symbol(cv.R, ctx.quantize(F));
}

int default_freq_cutoff(const FedosovContext& ctx) {
  return 2 * ctx.connection().u().max_abs_frequency() * std::max(1, trusted_bracket_order(ctx));
}

TraceDensity trace_density(const FedosovContext& ctx, int freq_cutoff, int test_cutoff,
                           int max_order) {
  const int n = ctx.n(), D = 2 * n;
  int top = std::max(0, trusted_bracket_order(ctx));
  if (max_order >= 0) top = std::min(top, max_order);
  TraceDensity td;
  td.n = n;
  td.freq_cutoff = freq_cutoff >= 0 ? freq_cutoff : default_freq_cutoff(ctx);
  td.test_cutoff = test_cutoff >= 0 ? test_cutoff : std::max(1, td.freq_cutoff / 2 + 1);
  const int K = td.freq_cutoff, T = td.test_cutoff;

  std::vector<Frequency> basis;
  Frequency a{};
  std::function<void(int)> enumerate = [&](int j) {
    if (j == D) {
      if (a != Frequency{}) basis.push_back(a);
      return;
    }
    for (int v = -T; v <= T; ++v) {
      a[std::size_t(j)] = v;
      enumerate(j + 1);
    }
    a[std::size_t(j)] = 0;
  };
  enumerate(0);
  td.test_functions = int(basis.size());

  if (top == 0) {
    td.rho = FormalFunction(n, 0);
    td.rho[0] = ScalarFn::constant(n, Complex(1));
    return td;
  }
  std::vector<WeylElement> lifts;
  lifts.reserve(basis.size());
  for (const auto& f : basis) lifts.push_back(ctx.quantize(ScalarFn::exponential(n, f)));

  // The ν^l coefficient of σ((1/ν)[Q e_a, Q e_b]) times ρ_j only enters through its mean,
  // and ∘ is linear over functions of x, so W·ρ_j = σ((1/ν)[Q e_a, (Q e_b)·ρ_j]).
  struct Pair {
    std::size_t i, j;
    Frequency target; // −(a + b)
    Complex lead;     // {e_a, e_b} = lead · e_{a+b}
    std::vector<ParamCoeff> known;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Frequency sum{}, target{};
      for (int d = 0; d < D; ++d) {
        sum[std::size_t(d)] = basis[i][std::size_t(d)] + basis[j][std::size_t(d)];
        target[std::size_t(d)] = -sum[std::size_t(d)];
      }
      ParamCoeff lead =
          poisson(ScalarFn::exponential(n, basis[i]), ScalarFn::exponential(n, basis[j]))
              .coefficient(sum);
      pairs.push_back(Pair{i, j, target, lead.constant(), std::vector<ParamCoeff>(top + 1)});
    }
  auto accumulate = [&](int j, const ScalarFn& rho_j) {
    if (rho_j.is_zero()) return;
    for (std::size_t b = 0; b < lifts.size(); ++b) {
      WeylElement g = j == 0 ? lifts[b] : lifts[b].times_function(rho_j);
      for (auto& p : pairs) {
        if (p.j != b) continue;
        auto m = commutator_over_nu_symbol_mean(lifts[p.i], g);
        for (int l = 1; j + l <= top && l < int(m.size()); ++l) p.known[std::size_t(j + l)] += m[std::size_t(l)];
      }
    }
  };

  auto in_cutoff = [&](const Frequency& q) {
    for (int v : q)
      if (std::abs(v) > K) return false;
    return true;
  };

  td.rho = FormalFunction(n, top);
  td.rho[0] = ScalarFn::constant(n, Complex(1));
  accumulate(0, td.rho[0]);
  for (int k = 1; k <= top; ++k) {
    std::map<Frequency, ParamCoeff> unknown;
    for (const auto& p : pairs) {
      const auto& q = p.target;
      if (p.lead.is_zero() || q == Frequency{} || !in_cutoff(q) || unknown.count(q)) continue;
      unknown.emplace(q, -p.known[std::size_t(k)] * (Complex(1) / p.lead));
      ++td.pivots;
    }
    // Every frequency in the box needs a pivot.
    std::size_t box = 1;
    for (int d = 0; d < D; ++d) box *= std::size_t(2 * K + 1);
    if (unknown.size() + 1 < box)
      throw TraceDensityError("trace density underdetermined at order " + std::to_string(k) +
                              "; raise test_cutoff");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      ++td.equations;
      ParamCoeff residual = pairs[p].known[std::size_t(k)];
      auto it = unknown.find(pairs[p].target);
      if (it != unknown.end()) residual += it->second * pairs[p].lead;
      if (!residual.is_zero())
        throw TraceDensityError("trace density system inconsistent at order " + std::to_string(k) +
                                "; raise freq_cutoff");
    }
    std::vector<MonoTerm> terms;
    for (const auto& [q, x] : unknown)
      for (const auto& [pk, c] : x.terms()) terms.emplace_back(MonoKey(q, pk.params()), c);
    td.rho[k] = ScalarFn::from_terms(n, std::move(terms));
    if (k < top) accumulate(k, td.rho[k]);
  }
  return td;
}

FormalScalar trace(const TraceDensity& rho, const FormalFunction& F) {
  for (int k = rho.order() + 1; k <= F.order(); ++k)
    if (!F[k].is_zero())
      throw std::invalid_argument("function order exceeds the solved trace density order");
  const int n = rho.n;
  return FormalScalar(0, pairing(F, rho.rho, rho.order()), 2 * n, n);
}

FormalScalar omega_tilde(const TraceDensity& rho, const CurvatureValue& cv) {
  return omega_tilde(rho, cv.symbol);
}

FormalScalar omega_tilde(const TraceDensity& rho, const FormalFunction& s) {
  if (lowest_nonzero(s) < 2) throw std::logic_error("curvature symbol has terms below nu^2");
  int top = std::min(s.order(), rho.order() + 2);
  auto c = pairing(s, rho.rho, top);
  for (auto& x : c) x = x * Complex(24);
  return FormalScalar(-2, std::move(c), 2 * rho.n, 0);
}

FormalScalar omega_tilde(const FedosovContext& ctx, const TraceDensity& rho, const TangentS3& A,
                         const TangentS3& B) {
  return omega_tilde(rho, curvature_R(ctx, A, B));
}

FormalScalar mu_tilde(const TraceDensity& rho, const ScalarFn& H) {
  if (!H.mean().is_zero()) throw std::invalid_argument("mu_tilde needs a zero-mean Hamiltonian");
  FormalFunction F = FormalFunction::from_scalar(H, 0);
  auto c = pairing(F, rho.rho, rho.order());
  for (auto& x : c) x = x * Complex(-24);
  return FormalScalar(-2, std::move(c), 2 * rho.n, 0);
}

std::vector<ScalarFn> covariant_hessian(const SymplecticConnection& c, const ScalarFn& H) {
  const int D = c.dim();
  Tensor3 G = c.christoffels();
  std::vector<ScalarFn> dH;
  for (int p = 0; p < D; ++p) dH.push_back(H.partial(p));
  std::vector<ScalarFn> h(std::size_t(D * D), ScalarFn(c.n()));
  for (int k = 0; k < D; ++k)
    for (int q = 0; q < D; ++q) {
      ScalarFn v = dH[std::size_t(k)].partial(q);
      for (int p = 0; p < D; ++p) v -= G(p, k, q) * dH[std::size_t(p)];
      h[std::size_t(k * D + q)] = v;
    }
  return h;
}

WeylElement qh_formula(const FedosovContext& ctx, const ScalarFn& H, const WeylElement& alpha_lie) {
  const int n = ctx.n(), D = 2 * n, N = ctx.order();
  SymplecticData sd{n};
  VectorField X = hamiltonian_vf(H);
  WeylElement out = WeylElement::from_scalar(n, N, H);
  for (int i = 0; i < D; ++i) {
    ScalarFn c(n);
    for (int j = 0; j < D; ++j)
      if (sd.omega(i, j) != 0) c -= X[std::size_t(j)].scaled(Complex(sd.omega(i, j)));
    YExponents e{};
    e[std::size_t(i)] = 1;
    if (!c.is_zero()) out += WeylElement::monomial(n, N, WeylKey(0, e, 0), c);
  }
  auto hess = covariant_hessian(ctx.connection(), H);
  for (int k = 0; k < D; ++k)
    for (int q = 0; q < D; ++q) {
      YExponents e{};
      e[std::size_t(k)] += 1;
      e[std::size_t(q)] += 1;
      const ScalarFn& h = hess[std::size_t(k * D + q)];
      if (!h.is_zero())
        out += WeylElement::monomial(n, N, WeylKey(0, e, 0), h.scaled(Complex(Rational(1, 2))));
    }
  out -= interior(X, ctx.r());
  out += alpha_lie;
  return out;
}

MomentResidual moment_residual(const FedosovContext& ctx, const TraceDensity& rho,
                               const TangentS3& A, const ScalarFn& H) {
  if (!H.mean().is_zero()) throw std::invalid_argument("moment residual needs a zero-mean Hamiltonian");
  TangentS3 L = lie_derivative_conn(H, ctx.connection());
  WeylElement alpha_a = vary(ctx, A).alpha.alpha;
  WeylElement alpha_l = vary(ctx, L).alpha.alpha;
  WeylElement qh = ctx.quantize(H);

  MomentResidual m;
  FormalFunction s = bracket_symbol(alpha_a, qh);
  if (lowest_nonzero(s) < 2) throw std::logic_error("trace variation symbol has terms below nu^2");
  auto c = pairing(s, rho.rho, std::min(s.order(), rho.order() + 2));
  for (auto& x : c) x = x * Complex(-24);
  m.lhs = FormalScalar(-2, std::move(c), 2 * rho.n, 0);
  m.rhs = omega_tilde(rho, curvature_R(ctx, L, A));
  int top = std::min(m.lhs.top(), m.rhs.top());
  m.lhs = m.lhs.truncated(top);
  m.rhs = m.rhs.truncated(top);
  m.difference = m.lhs - m.rhs;
  m.trusted_order = top;
  m.toshow_pointwise = bracket_symbol(alpha_a, qh - alpha_l);
  m.toshow = trace(rho, m.toshow_pointwise.truncated(rho.order()));
  m.qh_residual = qh - qh_formula(ctx, H, alpha_l);
  return m;
}

BianchiResidual bianchi_residual(const FedosovContext& ctx, const TraceDensity& rho,
                                 const TangentS3& A, const TangentS3& B, const TangentS3& C) {
  JetScope scope({Param::s});
  const int k = trusted_bracket_order(ctx);
  BianchiResidual out{FormalFunction(ctx.n(), k), WeylElement(ctx.n(), ctx.order()), FormalScalar()};
  const TangentS3* dirs[3] = {&A, &B, &C};
  for (int i = 0; i < 3; ++i) {
    const TangentS3& X = *dirs[i];
    const TangentS3& Y = *dirs[(i + 1) % 3];
    const TangentS3& Z = *dirs[(i + 2) % 3];
    Variation vx = vary(ctx, X, Param::s);
    CurvatureValue cv = curvature_R(vx.jet, Y, Z);
    WeylElement R0 = cv.R.param_evaluate(Param::s, Rational(0));
    FormalFunction sigma0 = cv.symbol.param_evaluate(Param::s, Rational(0));
    out.pointwise += (jet_derivative(cv.symbol, Param::s) +
                      bracket_symbol(vx.alpha.alpha, ctx.quantize(sigma0)))
                         .truncated(k);
    out.lifted += jet_derivative(cv.R, Param::s) + commutator_over_nu(vx.alpha.alpha, R0);
  }
  // dΩ̃(A, B, C) with the Ω̃ normalization 24 ν^{-2} ∫ · ρ.
  int top = std::min(k, rho.order() + 2);
  auto c = pairing(out.pointwise, rho.rho, top);
  for (auto& x : c) x = x * Complex(24);
  out.traced = FormalScalar(-2, std::move(c), 2 * rho.n, 0);
  return out;
}

} // namespace fedosov
