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

#ifndef FEDOSOV_TRANSPORT_HPP
#define FEDOSOV_TRANSPORT_HPP

#include <stdexcept>
#include <vector>

#include "fedosov/moment.hpp"

namespace fedosov {

class ParamCapError : public std::runtime_error {
public:
  ParamCapError(const std::string& what, int required)
      : std::runtime_error(what), required_(required) {}
  int required() const { return required_; }

private:
  int required_;
};

/// ∇^t = ∇ + Σ_{j≥1} t^j u_j.
class ConnectionPath {
public:
  ConnectionPath(SymplecticConnection base, std::vector<S3Field> coeffs);

  const SymplecticConnection& base() const { return base_; }
  const std::vector<S3Field>& coeffs() const { return coeffs_; }
  int degree() const { return int(coeffs_.size()); }
  /// The family as one connection with t-valued coefficients.
  SymplecticConnection family() const;

private:
  SymplecticConnection base_;
  std::vector<S3Field> coeffs_;
};

/// ∇^{ts} = ∇ + B(t, s), with ∇^{t0} = ∇^{0s} = ∇^{1s} = ∇.
class ConnectionDisk {
public:
  /// Throws std::invalid_argument if a boundary condition fails.
  ConnectionDisk(SymplecticConnection base, S3Field offset);
  /// ∇ + s t(1 − t)(A + t B).
  static ConnectionDisk spanned(const SymplecticConnection& base, const S3Field& A,
                                const S3Field& B);

  const SymplecticConnection& base() const { return base_; }
  const S3Field& offset() const { return offset_; }
  SymplecticConnection family() const { return base_.shifted(offset_); }
  /// The outer boundary t ↦ ∇^{t1}.
  SymplecticConnection boundary() const;

private:
  SymplecticConnection base_;
  S3Field offset_;
};

struct PathGenerator {
  FedosovContext ctx; // solved over the parameter ring
  WeylElement h;      // −(D^{∇t})⁻¹(∂_t Γ̄ + ∂_t r)
};

/// (D)⁻¹(∂_p Γ̄ + ∂_p r) for a context whose connection depends on p.
WeylElement alpha_along(const FedosovContext& ctx, Param p);

PathGenerator generator_h(const ConnectionPath& path, int order);

struct TransportElement {
  PathGenerator gen;
  WeylElement v;     // extended, v|_{t=0} = 1
  WeylElement v_inv; // geometric series
};

/// Solves dv/dt = (1/ν) h∘v, v₀ = 1 degree by degree.
TransportElement solve_v(PathGenerator gen);
TransportElement solve_v(const ConnectionPath& path, int order);
/// dv/dt − (1/ν) h∘v.
WeylElement ode_residual(const TransportElement& te);
/// Inverse of 1 + w (w of positive total degree) by the terminating series.
WeylElement series_inverse(const WeylElement& v);

/// v∘a∘v⁻¹, returned in the non-extended algebra.
WeylElement transport(const TransportElement& te, const WeylElement& a);

struct TransportCheck {
  WeylElement flatness;   // D^{∇t}(v∘Q(F)∘v⁻¹)
  FormalFunction product; // σ(B QF) ★_t σ(B QG)
  FormalFunction image;   // σ(B Q(F★G))
  int trusted_order = 0;  // ν-order compared
};
TransportCheck transport_check(const TransportElement& te, const FedosovContext& base,
                               const ScalarFn& F, const ScalarFn& G);

struct Holonomy {
  FedosovContext base;        // D^∇
  FedosovContext ctx;         // over (t, s)
  WeylElement alpha_t;        // α(∂_t ∇^{ts})
  WeylElement alpha_s;        // α(∂_s ∇^{ts})
  WeylElement curvature;      // ∂_t α_s − ∂_s α_t + (1/ν)[α_t, α_s]
  TransportElement w;         // generated by −α_t
  WeylElement integrand;      // w⁻¹∘R∘w
  WeylElement generator;      // w_{1s}∘∫₀¹ integrand dt∘w_{1s}⁻¹
  WeylElement direct;         // ν (∂_s w_{1s})∘w_{1s}⁻¹
  WeylElement difference;     // generator − direct
  WeylElement integrand_flatness;
  WeylElement generator_flatness;
};
Holonomy holonomy_generator(const ConnectionDisk& disk, int order);

/// a_t with da/dt = sign·(1/ν)[H_t, a_t]★, a₀ = F, to t-degree t_order.
FormalFunction heisenberg_flow(const FedosovContext& ctx, const FormalFunction& H,
                               const FormalFunction& F, int t_order, int sign = 1);

/// G̃ with exp(ν D_G̃) equal to the s-ordered exponential of D_{G_s} over [0, 1].
FormalFunction exp_extract(const FedosovContext& ctx, const FormalFunction& G, int order);
/// exp(ν D_G̃)(F) = Σ_k ad★(G̃)^k F / k!.
FormalFunction apply_exponential(const FedosovContext& ctx, const FormalFunction& Gt,
                                 const FormalFunction& F);
/// B^1(F) for dB^s/ds = D_{G_s} B^s, B^0 = Id.
FormalFunction ordered_exponential(const FedosovContext& ctx, const FormalFunction& G,
                                   const FormalFunction& F);

struct ActionValue {
  FormalScalar omega_part;    // ∫_B Ω̃
  FormalScalar holonomy_part; // (2π)^n 24 ν^{n−2} ∫₀¹ tr(ν ∂_s v_{1s} v_{1s}⁻¹) ds
  FormalScalar mu_part;       // −∫₀¹ μ̃(∇^{t1})(H_t) dt
  FormalScalar value;         // omega_part + mu_part
  FormalScalar value_holonomy;
  FormalScalar difference;    // omega_part − holonomy_part
  int trusted_order = 0;      // top ν exponent of value
};
/// H is t-dependent with zero mean for every t.
ActionValue action_functional(const ConnectionDisk& disk, const ScalarFn& H, int order);

} // namespace fedosov

#endif // FEDOSOV_TRANSPORT_HPP
