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

#include "fedosov/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fedosov {

// ---------------------------------------------------------------------------
// S3Field

S3Field::S3Field(int n) : n_(n) {
  if (n < 1 || 2 * n > kMaxTorusDim) throw std::invalid_argument("torus half-dimension must be 1 or 2");
  data_.assign(std::size_t(dim() * dim() * dim()), ScalarFn(n));
}

int S3Field::slot(int i, int j, int k) const {
  int D = dim();
  if (i < 0 || j < 0 || k < 0 || i >= D || j >= D || k >= D)
    throw std::out_of_range("S3 index out of range");
  std::array<int, 3> s{i, j, k};
  std::sort(s.begin(), s.end());
  return (s[0] * D + s[1]) * D + s[2];
}

S3Field S3Field::from_entries(int n, const std::vector<Entry>& entries, SymmetrizePolicy policy) {
  S3Field u(n);
  if (policy == SymmetrizePolicy::strict_validate) {
    std::map<int, ScalarFn> seen;
    for (const auto& e : entries) {
      int s = u.slot(e.i, e.j, e.k);
      auto it = seen.find(s);
      if (it != seen.end() && it->second != e.value)
        throw std::invalid_argument("conflicting values for a symmetric index set");
      seen[s] = e.value;
      u.data_[std::size_t(s)] = e.value;
    }
    return u;
  }
  // sym(T)_{ijk} = (1/6) Σ_σ T_{σ(ijk)}: an entry reaches its sorted slot
  // through 6/|orbit| permutations.
  for (const auto& e : entries) {
    int orbit = (e.i == e.j && e.j == e.k) ? 1 : (e.i == e.j || e.j == e.k || e.i == e.k) ? 3 : 6;
    int s = u.slot(e.i, e.j, e.k);
    u.data_[std::size_t(s)] += e.value.scaled(Complex(Rational(1, orbit)));
  }
  return u;
}

bool S3Field::is_zero() const {
  for (const auto& f : data_)
    if (!f.is_zero()) return false;
  return true;
}

int S3Field::max_abs_frequency() const {
  int m = 0;
  for (const auto& f : data_) m = std::max(m, f.max_abs_frequency());
  return m;
}

S3Field S3Field::scaled(const Complex& c) const {
  S3Field r = *this;
  for (auto& f : r.data_) f = f.scaled(c);
  return r;
}

S3Field S3Field::times(const ParamCoeff& c) const {
  S3Field r = *this;
  for (auto& f : r.data_) f = f.times(c);
  return r;
}

S3Field S3Field::param_diff(Param p) const {
  S3Field r = *this;
  for (auto& f : r.data_) f = f.param_diff(p);
  return r;
}

S3Field S3Field::param_evaluate(Param p, const Rational& v) const {
  S3Field r = *this;
  for (auto& f : r.data_) f = f.param_evaluate(p, v);
  return r;
}

S3Field& S3Field::operator+=(const S3Field& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch in S3 field");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

// ---------------------------------------------------------------------------
// Connection data

ScalarFn SymplecticConnection::christoffel(int k, int i, int j) const {
  SymplecticData sd{n()};
  int l = sd.partner(k);
  return u_(l, i, j).scaled(Complex(sd.lambda(k, l)));
}

Tensor3 SymplecticConnection::christoffels() const {
  Tensor3 g(n(), dim());
  for (int k = 0; k < dim(); ++k)
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) g(k, i, j) = christoffel(k, i, j);
  return g;
}

Tensor4 curvature_tensor(const SymplecticConnection& c) {
  const int D = c.dim();
  Tensor3 G = c.christoffels();
  Tensor4 R(c.n(), D);
  for (int r = 0; r < D; ++r)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) {
          if (k == l) continue;
          ScalarFn v = G(r, l, j).partial(k) - G(r, k, j).partial(l);
          for (int p = 0; p < D; ++p) v += G(r, k, p) * G(p, l, j) - G(r, l, p) * G(p, k, j);
          R(r, j, k, l) = v;
        }
  return R;
}

std::vector<ScalarFn> ricci(const SymplecticConnection& c, const Tensor4& R) {
  const int D = c.dim();
  std::vector<ScalarFn> ric(std::size_t(D * D), ScalarFn(c.n()));
  for (int j = 0; j < D; ++j)
    for (int l = 0; l < D; ++l)
      for (int r = 0; r < D; ++r) ric[std::size_t(j * D + l)] += R(r, j, r, l);
  return ric;
}

WeylElement rbar_from(const Tensor4& R, int n, int order) {
  SymplecticData sd{n};
  const int D = sd.dim();
  WeylElement out(n, order);
  for (int k = 0; k < D; ++k)
    for (int l = k + 1; l < D; ++l)
      for (int i = 0; i < D; ++i)
        for (int j = i; j < D; ++j) {
          // ω_{ir}R^r_{jkl}: only r = partner(i) contributes.
          int ri = sd.partner(i), rj = sd.partner(j);
          ScalarFn wij = R(ri, j, k, l).scaled(Complex(sd.omega(i, ri)));
          ScalarFn wji = R(rj, i, k, l).scaled(Complex(sd.omega(j, rj)));
          if (wij != wji) throw std::logic_error("curvature lowered with omega is not symmetric");
          if (wij.is_zero()) continue;
          // ½ Σ_{k<l} Σ_{i,j} (...) y^i y^j; off-diagonal pairs appear twice.
          Rational w = i == j ? Rational(1, 2) : Rational(1);
          YExponents e{};
          e[i] += 1;
          e[j] += 1;
          out += WeylElement::monomial(n, order, WeylKey(0, e, (1u << k) | (1u << l)),
                                       wij.scaled(Complex(w)));
        }
  return out;
}

WeylElement rbar(const SymplecticConnection& c, int order) {
  return rbar_from(curvature_tensor(c), c.n(), order);
}

WeylElement gammabar(const S3Field& u, int order) {
  const int n = u.n(), D = u.dim();
  WeylElement out(n, order);
  for (int i = 0; i < D; ++i)
    for (int l = 0; l < D; ++l)
      for (int j = l; j < D; ++j) {
        const ScalarFn& v = u(l, j, i);
        if (v.is_zero()) continue;
        Rational w = l == j ? Rational(1, 2) : Rational(1);
        YExponents e{};
        e[l] += 1;
        e[j] += 1;
        out += WeylElement::monomial(n, order, WeylKey(0, e, 1u << i), v.scaled(Complex(w)));
      }
  return out;
}

VectorField hamiltonian_vf(const ScalarFn& H) {
  SymplecticData sd{H.n()};
  VectorField X(std::size_t(sd.dim()), ScalarFn(H.n()));
  for (int i = 0; i < sd.dim(); ++i) {
    int j = sd.partner(i);
    X[std::size_t(i)] = H.partial(j).scaled(Complex(sd.lambda(j, i)));
  }
  return X;
}

ScalarFn poisson(const ScalarFn& F, const ScalarFn& G) {
  SymplecticData sd{F.n()};
  ScalarFn out(F.n());
  for (int j = 0; j < sd.dim(); ++j) {
    int k = sd.partner(j);
    out += (F.partial(j) * G.partial(k)).scaled(Complex(sd.lambda(j, k)));
  }
  return out;
}

TangentS3 lie_derivative_conn(const ScalarFn& H, const SymplecticConnection& c) {
  SymplecticData sd{c.n()};
  const int D = c.dim();
  VectorField X = hamiltonian_vf(H);
  Tensor3 G = c.christoffels();
  Tensor4 R = curvature_tensor(c);
  // T(j,k) = (∇_j X)^k
  std::vector<ScalarFn> T(std::size_t(D * D), ScalarFn(c.n()));
  for (int j = 0; j < D; ++j)
    for (int k = 0; k < D; ++k) {
      ScalarFn v = X[k].partial(j);
      for (int p = 0; p < D; ++p) v += G(k, j, p) * X[p];
      T[std::size_t(j * D + k)] = v;
    }
  auto t = [&](int j, int k) -> const ScalarFn& { return T[std::size_t(j * D + k)]; };
  Tensor3 L(c.n(), D); // L(k,i,j) = (L_X∇)^k_{ij}
  for (int k = 0; k < D; ++k)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        ScalarFn v = t(j, k).partial(i);
        for (int p = 0; p < D; ++p) {
          v += G(k, i, p) * t(j, p) - G(p, i, j) * t(p, k);
          v += X[p] * R(k, j, p, i);
        }
        L(k, i, j) = v;
      }
  TangentS3 out(c.n());
  for (int l = 0; l < D; ++l)
    for (int i = l; i < D; ++i)
      for (int j = i; j < D; ++j) {
        int k = sd.partner(l);
        out.set(l, i, j, L(k, i, j).scaled(Complex(sd.omega(l, k))));
      }
  for (int l = 0; l < D; ++l)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        int k = sd.partner(l);
        if (out(l, i, j) != L(k, i, j).scaled(Complex(sd.omega(l, k))))
          throw std::logic_error("Lie derivative of the connection is not totally symmetric");
      }
  return out;
}

namespace {

// (∇T)_{q;rs} for a covariant 2-tensor stored as D×D.
std::vector<ScalarFn> cov_derivative_2(const Tensor3& G, const std::vector<ScalarFn>& T, int n,
                                       int D) {
  std::vector<ScalarFn> out(std::size_t(D * D * D), ScalarFn(n));
  for (int q = 0; q < D; ++q)
    for (int r = 0; r < D; ++r)
      for (int s = 0; s < D; ++s) {
        ScalarFn v = T[std::size_t(r * D + s)].partial(q);
        for (int a = 0; a < D; ++a)
          v -= G(a, q, r) * T[std::size_t(a * D + s)] + G(a, q, s) * T[std::size_t(r * D + a)];
        out[std::size_t((q * D + r) * D + s)] = v;
      }
  return out;
}

} // namespace

ScalarFn cahen_gutt_mu(const SymplecticConnection& c) {
  SymplecticData sd{c.n()};
  const int D = c.dim(), n = c.n();
  Tensor3 G = c.christoffels();
  Tensor4 R = curvature_tensor(c);
  std::vector<ScalarFn> ric = ricci(c, R);
  auto P = [&](int i) { return sd.partner(i); };
  auto lam = [&](int i) { return sd.lambda(i, P(i)); };

  // ∇Ric then ∇²Ric: (∇²Ric)_{pq;rs} = ∂_p(∇Ric)_{q;rs} − Γ^a_{pq}(∇Ric)_{a;rs}
  //                                   − Γ^a_{pr}(∇Ric)_{q;as} − Γ^a_{ps}(∇Ric)_{q;ra}.
  std::vector<ScalarFn> dric = cov_derivative_2(G, ric, n, D);
  auto dr = [&](int q, int r, int s) -> const ScalarFn& {
    return dric[std::size_t((q * D + r) * D + s)];
  };
  ScalarFn term1(n);
  for (int p = 0; p < D; ++p)
    for (int q = 0; q < D; ++q) {
      // (∇²_{pq}Ric)^{pq} = Λ^{pr}Λ^{qs}(∇²Ric)_{pq;rs}; only r = P(p), s = P(q).
      int r = P(p), s = P(q);
      ScalarFn v = dr(q, r, s).partial(p);
      for (int a = 0; a < D; ++a)
        v -= G(a, p, q) * dr(a, r, s) + G(a, p, r) * dr(q, a, s) + G(a, p, s) * dr(q, r, a);
      term1 += v.scaled(Complex(sd.lambda(p, r) * sd.lambda(q, s)));
    }

  // R_{abcd} = ω_{ar}R^r_{bcd}.
  auto Rl = [&](int a, int b, int c2, int d) {
    return R(P(a), b, c2, d).scaled(Complex(sd.omega(a, P(a))));
  };
  ScalarFn term2(n);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c2 = 0; c2 < D; ++c2)
        for (int d = 0; d < D; ++d) {
          int sign = lam(a) * lam(b) * lam(c2) * lam(d);
          term2 += (Rl(a, b, c2, d) * Rl(P(a), P(b), P(c2), P(d))).scaled(Complex(sign));
        }
  ScalarFn term3(n);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      term3 += (ric[std::size_t(a * D + b)] * ric[std::size_t(P(a) * D + P(b))])
                   .scaled(Complex(lam(a) * lam(b)));
  return term1 + term2.scaled(Complex(Rational(1, 4))) - term3.scaled(Complex(Rational(1, 2)));
}

ScalarFn triple_lambda_contraction(const TangentS3& A, const TangentS3& B) {
  SymplecticData sd{A.n()};
  const int D = A.dim();
  ScalarFn out(A.n());
  for (int i1 = 0; i1 < D; ++i1)
    for (int i2 = 0; i2 < D; ++i2)
      for (int i3 = 0; i3 < D; ++i3) {
        int j1 = sd.partner(i1), j2 = sd.partner(i2), j3 = sd.partner(i3);
        int sign = sd.lambda(i1, j1) * sd.lambda(i2, j2) * sd.lambda(i3, j3);
        out += (A(i1, i2, i3) * B(j1, j2, j3)).scaled(Complex(sign));
      }
  return out;
}

TorusIntegral omega_E(const TangentS3& A, const TangentS3& B) {
  if (A.n() != B.n()) throw std::invalid_argument("dimension mismatch in omega_E");
  return integrate_torus(triple_lambda_contraction(A, B));
}

} // namespace fedosov
