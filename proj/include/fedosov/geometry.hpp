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

#ifndef FEDOSOV_GEOMETRY_HPP
#define FEDOSOV_GEOMETRY_HPP

#include <array>
#include <vector>

#include "fedosov/scalar_ring.hpp"
#include "fedosov/weyl.hpp"

namespace fedosov {

enum class SymmetrizePolicy { strict_validate, auto_symmetrize };

/// Totally symmetric 3-tensor field u_{ijk} with ScalarFn entries.
class S3Field {
public:
  struct Entry {
    int i, j, k;
    ScalarFn value;
  };

  explicit S3Field(int n = 1);
  /// strict_validate: each entry sets the symmetric component of its index
  /// set; repeated index sets must agree. auto_symmetrize: entries are
  /// components of a general tensor, and the result is its symmetrization.
  static S3Field from_entries(int n, const std::vector<Entry>& entries,
                              SymmetrizePolicy policy = SymmetrizePolicy::strict_validate);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const ScalarFn& operator()(int i, int j, int k) const { return data_[slot(i, j, k)]; }
  void set(int i, int j, int k, const ScalarFn& v) { data_[slot(i, j, k)] = v; }
  bool is_zero() const;
  int max_abs_frequency() const;

  S3Field operator-() const { return scaled(Complex(-1)); }
  S3Field scaled(const Complex& c) const;
  S3Field times(const ParamCoeff& c) const;
  S3Field param_diff(Param p) const;
  S3Field param_evaluate(Param p, const Rational& v) const;
  S3Field& operator+=(const S3Field& o);
  friend S3Field operator+(S3Field a, const S3Field& b) { return a += b; }
  friend S3Field operator-(S3Field a, const S3Field& b) { return a += -b; }
  friend bool operator==(const S3Field& a, const S3Field& b) { return a.data_ == b.data_; }

private:
  int slot(int i, int j, int k) const;
  int n_;
  std::vector<ScalarFn> data_; // indexed by sorted triple
};

using TangentS3 = S3Field;
using VectorField = std::vector<ScalarFn>;

/// Dense rank-3 / rank-4 arrays of ScalarFn over 2n indices.
struct Tensor3 {
  int D = 2;
  std::vector<ScalarFn> v;
  Tensor3(int n, int D_) : D(D_), v(std::size_t(D_ * D_ * D_), ScalarFn(n)) {}
  ScalarFn& operator()(int a, int b, int c) { return v[std::size_t((a * D + b) * D + c)]; }
  const ScalarFn& operator()(int a, int b, int c) const { return v[std::size_t((a * D + b) * D + c)]; }
};

struct Tensor4 {
  int D = 2;
  std::vector<ScalarFn> v;
  Tensor4(int n, int D_) : D(D_), v(std::size_t(D_ * D_ * D_ * D_), ScalarFn(n)) {}
  ScalarFn& operator()(int a, int b, int c, int d) {
    return v[std::size_t(((a * D + b) * D + c) * D + d)];
  }
  const ScalarFn& operator()(int a, int b, int c, int d) const {
    return v[std::size_t(((a * D + b) * D + c) * D + d)];
  }
};

/// Symplectic connection ∇ = ∂ + Γ with Γ^k_{ij} = Λ^{kl} u_{lij}.
class SymplecticConnection {
public:
  explicit SymplecticConnection(S3Field u) : u_(std::move(u)) {}
  static SymplecticConnection flat(int n) { return SymplecticConnection(S3Field(n)); }

  int n() const { return u_.n(); }
  int dim() const { return u_.dim(); }
  const S3Field& u() const { return u_; }
  bool is_flat_reference() const { return u_.is_zero(); }
  /// ∇ + A (affine structure).
  SymplecticConnection shifted(const TangentS3& a) const { return SymplecticConnection(u_ + a); }

  /// Γ^k_{ij}.
  ScalarFn christoffel(int k, int i, int j) const;
  Tensor3 christoffels() const;

private:
  S3Field u_;
};

/// R^r_{jkl} = ∂_k Γ^r_{lj} − ∂_l Γ^r_{kj} + Γ^r_{kp}Γ^p_{lj} − Γ^r_{lp}Γ^p_{kj}.
Tensor4 curvature_tensor(const SymplecticConnection& c);
/// Ric_{jl} = R^r_{jrl}.
std::vector<ScalarFn> ricci(const SymplecticConnection& c, const Tensor4& R);

/// R̄ = ¼ ω_{ir} R^r_{jkl} y^i y^j dx^k ∧ dx^l. Throws std::logic_error if
/// ω_{ir}R^r_{jkl} fails to be symmetric in (i, j).
WeylElement rbar(const SymplecticConnection& c, int order);
WeylElement rbar_from(const Tensor4& R, int n, int order);
/// Γ̄ = ½ u_{lji} y^l y^j dx^i (also used for Ā of a tangent vector).
WeylElement gammabar(const S3Field& u, int order);
inline WeylElement gammabar(const SymplecticConnection& c, int order) {
  return gammabar(c.u(), order);
}

/// X_H^i = Λ^{ji} ∂_j H, so that ι(X_H)ω = dH.
VectorField hamiltonian_vf(const ScalarFn& H);
/// {F, G} = Λ^{jk} ∂_j F ∂_k G = −ω(X_F, X_G).
ScalarFn poisson(const ScalarFn& F, const ScalarFn& G);

/// ω-lowered (L_{X_H}∇)_{lij} = ω_{lk}[(∇²_{ij}X_H)^k + X_H^p R^k_{jpi}].
/// Throws std::logic_error if the result is not totally symmetric.
TangentS3 lie_derivative_conn(const ScalarFn& H, const SymplecticConnection& c);

/// μ(∇) = (∇²_{pq}Ric)^{pq} + ¼ R_{abcd}R^{abcd} − ½ Ric_{ab}Ric^{ab}.
ScalarFn cahen_gutt_mu(const SymplecticConnection& c);

/// Ω^𝓔(A, B) = ∫ Λ^{i₁j₁}Λ^{i₂j₂}Λ^{i₃j₃} A_{i₁i₂i₃} B_{j₁j₂j₃} ω^n/n!.
TorusIntegral omega_E(const TangentS3& A, const TangentS3& B);
/// Pointwise integrand of omega_E.
ScalarFn triple_lambda_contraction(const TangentS3& A, const TangentS3& B);

} // namespace fedosov

#endif // FEDOSOV_GEOMETRY_HPP
