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

#include "fedosov/checks.hpp"

#include <functional>

namespace fedosov::checks {

namespace {

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= Rational(i);
  return r;
}

Rational falling(int a, int m) {
  Rational r(1);
  for (int i = 0; i < m; ++i) r *= Rational(a - i);
  return r;
}

// Enumerates m ∈ Π_i [0, bound_i] with |m| <= max_total.
void for_each_multi(const std::vector<int>& bound, int max_total,
                    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> m(bound.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == bound.size()) {
      fn(m);
      return;
    }
    for (int v = 0; v <= std::min(bound[i], left); ++v) {
      m[i] = v;
      rec(i + 1, left - v);
    }
    m[i] = 0;
  };
  rec(0, max_total);
}

ScalarFn run_fn(const WeylElement& a, const WeylElement::Run& r) {
  auto span = a.run_terms(r);
  return ScalarFn::from_terms(a.n(), std::vector<MonoTerm>(span.begin(), span.end()));
}

ScalarFn derive(const ScalarFn& f, const std::vector<int>& m) {
  ScalarFn g = f;
  for (std::size_t j = 0; j < m.size(); ++j)
    for (int c = 0; c < m[j]; ++c) g = g.partial(int(j));
  return g;
}

} // namespace

WeylElement moyal_weyl_oracle(const WeylElement& a, const WeylElement& b) {
  SymplecticData sd{a.n()};
  const int D = sd.dim();
  WeylElement out(a.n(), a.order(), a.extended() || b.extended());
  for (const auto& ra : a.runs()) {
    for (const auto& rb : b.runs()) {
      int sign = wedge_sign(ra.key.dx_mask(), rb.key.dx_mask());
      if (sign == 0) continue;
      YExponents al = ra.key.y_exponents(), be = rb.key.y_exponents();
      std::vector<int> bound(D);
      for (int i = 0; i < D; ++i) bound[i] = std::min(al[i], be[sd.partner(i)]);
      ScalarFn fg = run_fn(a, ra) * run_fn(b, rb);
      for_each_multi(bound, 1 << 20, [&](const std::vector<int>& m) {
        Rational c(sign);
        int j = 0;
        YExponents g{};
        for (int i = 0; i < D; ++i) g[i] = al[i] + be[i];
        for (int i = 0; i < D; ++i) {
          int p = sd.partner(i);
          j += m[i];
          Rational lam(sd.lambda(i, p), 2);
          for (int q = 0; q < m[i]; ++q) c *= lam;
          c = c / factorial(m[i]) * falling(al[i], m[i]) * falling(be[p], m[i]);
          g[i] -= m[i];
          g[p] -= m[i];
        }
        WeylKey key(ra.key.nu() + rb.key.nu() + j, g, ra.key.dx_mask() | rb.key.dx_mask());
        if (key.total_degree() > a.order()) return;
        out += WeylElement::monomial(a.n(), a.order(), key, fg.scaled(Complex(c)), out.extended());
      });
    }
  }
  return out;
}

FormalFunction moyal_star_oracle(const FormalFunction& F, const FormalFunction& G, int order) {
  SymplecticData sd{F.n()};
  const int D = sd.dim();
  FormalFunction out(F.n(), order);
  for (int a = 0; a <= F.order(); ++a) {
    for (int b = 0; b <= G.order(); ++b) {
      if (a + b > order || F[a].is_zero() || G[b].is_zero()) continue;
      std::vector<int> bound(D, order - a - b);
      for_each_multi(bound, order - a - b, [&](const std::vector<int>& m) {
        Rational c(1);
        int j = 0;
        std::vector<int> mp(D, 0);
        for (int i = 0; i < D; ++i) {
          int p = sd.partner(i);
          j += m[i];
          mp[p] = m[i];
          Rational lam(sd.lambda(i, p), 2);
          for (int q = 0; q < m[i]; ++q) c *= lam;
          c = c / factorial(m[i]);
        }
        out[a + b + j] += (derive(F[a], m) * derive(G[b], mp)).scaled(Complex(c));
      });
    }
  }
  return out;
}

ScalarFn random_real_function(std::mt19937_64& rng, int n, int max_freq, int terms) {
  std::uniform_int_distribution<int> fd(-max_freq, max_freq), num(-3, 3), den(1, 3);
  ScalarFn f(n);
  for (int t = 0; t < terms; ++t) {
    Frequency k{};
    do {
      for (int j = 0; j < 2 * n; ++j) k[j] = fd(rng);
    } while (t == 0 && max_freq > 0 && k == Frequency{});
    Complex c;
    do {
      c = Complex(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    } while (c.is_zero());
    ScalarFn e = ScalarFn::exponential(n, k, c);
    f += e + e.conj();
  }
  return ScalarFn::from_terms(n, std::vector<MonoTerm>(f.terms().begin(), f.terms().end()), true);
}

S3Field random_s3(std::mt19937_64& rng, int n, int max_freq, int terms) {
  S3Field u(n);
  const int D = 2 * n;
  for (int i = 0; i < D; ++i)
    for (int j = i; j < D; ++j)
      for (int k = j; k < D; ++k) {
        ScalarFn f = random_real_function(rng, n, max_freq, terms);
        u.set(i, j, k, f);
      }
  return u;
}

Tensor3 lie_derivative_christoffel_oracle(const ScalarFn& H, const SymplecticConnection& c) {
  SymplecticData sd{c.n()};
  const int D = c.dim();
  VectorField X = hamiltonian_vf(H);
  Tensor3 G = c.christoffels();
  Tensor3 L(c.n(), D);
  for (int k = 0; k < D; ++k)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        ScalarFn v = X[k].partial(j).partial(i);
        for (int p = 0; p < D; ++p) {
          v += X[p] * G(k, i, j).partial(p);
          v -= G(p, i, j) * X[k].partial(p);
          v += G(k, p, j) * X[p].partial(i);
          v += G(k, i, p) * X[p].partial(j);
        }
        L(k, i, j) = v;
      }
  Tensor3 low(c.n(), D);
  for (int l = 0; l < D; ++l)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        int k = sd.partner(l);
        low(l, i, j) = L(k, i, j).scaled(Complex(sd.omega(l, k)));
      }
  return low;
}

} // namespace fedosov::checks
