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

#ifndef FEDOSOV_MOMENT_HPP
#define FEDOSOV_MOMENT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "fedosov/fedosov.hpp"
#include "fedosov/formal_scalar.hpp"
#include "fedosov/geometry.hpp"

namespace fedosov {

/// Holds caps at 1 for the listed parameters (first-order jets), keeping the
/// other caps as they are.
class JetScope {
public:
  explicit JetScope(std::initializer_list<Param> params);

private:
  ParamCapScope scope_;
};

struct AlphaForm {
  WeylElement alpha;  // α_∇(A)
  WeylElement source; // Ā + ∂_p r^{∇+pA} at p = 0
};

/// Fedosov data along the line ∇ + pA, to first order in p.
struct Variation {
  FedosovContext base;
  FedosovContext jet; // solved over ∇ + pA with p capped at 1
  TangentS3 direction;
  Param param;
  AlphaForm alpha;
};

/// Builds the jet and α_∇(A) = D⁻¹(Ā + ṙ). The caller's caps apply to the
/// other parameters. Throws FlatnessError if the source is not D-flat.
Variation vary(const FedosovContext& base, const TangentS3& A, Param p = Param::t);
AlphaForm alpha(const SymplecticConnection& c, const TangentS3& A, int order);

/// ∂_p at p = 0 of a p-family.
FormalFunction jet_derivative(const FormalFunction& F, Param p);
WeylElement jet_derivative(const WeylElement& a, Param p);

/// σ((1/ν)[a, b]) through the trusted ν-order ⌊N/2⌋ − 1.
FormalFunction bracket_symbol(const WeylElement& a, const WeylElement& b);

/// 𝒟_A F = ∂_p F(∇ + pA) + (1/ν)[α(A), Q(F)]|_{y=0}. F may be a p-family
/// (a constant section when it does not involve p).
FormalFunction formal_connection_apply(const Variation& v, const FormalFunction& F);
/// The flat section ∂_p Q^{∇+pA}(F(∇+pA)) + (1/ν)[α(A), Q(F)].
WeylElement formal_connection_lift(const Variation& v, const FormalFunction& F);

/// R_∇(A, B) = dα(A, B) + (1/ν)[α(A), α(B)] for constant A, B, computed
/// from the two-parameter family ∇ + tA + uB.
struct CurvatureValue {
  WeylElement R;
  FormalFunction symbol;
  // Intermediate data, kept for the operator route.
  FedosovContext ctx_a; // ∇ + tA
  FedosovContext ctx_b; // ∇ + uB
  WeylElement alpha_a, alpha_b;
  WeylElement alpha_b_along_a; // α_{∇+tA}(B), t-jet
  WeylElement alpha_a_along_b; // α_{∇+uB}(A), u-jet
};
CurvatureValue curvature_R(const FedosovContext& ctx, const TangentS3& A, const TangentS3& B);
CurvatureValue curvature_R(const SymplecticConnection& c, const TangentS3& A, const TangentS3& B,
                           int order);
/// 𝒟_A𝒟_B F − 𝒟_B𝒟_A F for a constant section F.
FormalFunction curvature_operator(const CurvatureValue& cv, const FormalFunction& F);
/// (1/ν)[R(A, B), Q(F)]|_{y=0}.
FormalFunction curvature_commutator(const FedosovContext& ctx, const CurvatureValue& cv,
                                    const FormalFunction& F);

class TraceDensityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TraceDensity {
  int n = 1;
  FormalFunction rho; // ρ₀ = 1, solved through rho.order()
  int freq_cutoff = 0;
  int test_cutoff = 0;
  int test_functions = 0;
  int equations = 0;    // pair equations checked, all orders
  int pivots = 0;       // unknowns fixed
  int order() const { return rho.order(); }
};

/// Solves ∫[F, G]★ ρ = 0 order by order over exponential test functions
/// e_a, |a|∞ ≤ test_cutoff, with ρ_k supported in |q|∞ ≤ freq_cutoff and
/// ∫ρ_k = 0. Negative cutoffs select the defaults.
TraceDensity trace_density(const FedosovContext& ctx, int freq_cutoff = -1, int test_cutoff = -1,
                           int max_order = -1);
int default_freq_cutoff(const FedosovContext& ctx);

/// (2πν)^{-n} ∫ F ρ ω^n/n!. Throws if F has nonzero terms past ρ's order.
FormalScalar trace(const TraceDensity& rho, const FormalFunction& F);
/// 24 ν^{-2} ∫ σR(A, B) ρ ω^n/n!, i.e. (2π)^n 24 ν^{n−2} tr(σR).
FormalScalar omega_tilde(const TraceDensity& rho, const CurvatureValue& cv);
/// 24 ν^{-2} ∫ s ρ for a curvature symbol s starting at ν².
FormalScalar omega_tilde(const TraceDensity& rho, const FormalFunction& curvature_symbol);
FormalScalar omega_tilde(const FedosovContext& ctx, const TraceDensity& rho, const TangentS3& A,
                         const TangentS3& B);
/// −24 ν^{-2} ∫ H ρ ω^n/n!. Throws std::invalid_argument unless ∫H = 0.
FormalScalar mu_tilde(const TraceDensity& rho, const ScalarFn& H);

/// ∇²_{kq}H = ∂_k∂_q H − Γ^p_{kq}∂_p H.
std::vector<ScalarFn> covariant_hessian(const SymplecticConnection& c, const ScalarFn& H);
/// H − ω_{ij}y^iX_H^j + ½(∇²_{kq}H)y^ky^q − ι(X_H)r + α(L_{X_H}∇).
WeylElement qh_formula(const FedosovContext& ctx, const ScalarFn& H, const WeylElement& alpha_lie);

struct MomentResidual {
  FormalScalar lhs;        // d/dt μ̃(∇+tA)(H) by the trace variation formula
  FormalScalar rhs;        // Ω̃(L_{X_H}∇, A)
  FormalScalar difference; // lhs − rhs
  FormalFunction toshow_pointwise; // (1/ν)[α(A), Q(H) − α(L_{X_H}∇)]|_{y=0}
  FormalScalar toshow;             // its trace
  WeylElement qh_residual; // Q(H) − qh_formula
  int trusted_order = 0;   // highest ν exponent compared
};
MomentResidual moment_residual(const FedosovContext& ctx, const TraceDensity& rho,
                               const TangentS3& A, const ScalarFn& H);

struct BianchiResidual {
  FormalFunction pointwise; // cyclic sum of 𝒟_A(σR(B, C))
  WeylElement lifted;       // cyclic sum of the flat lifts
  FormalScalar traced;      // trace of the pointwise sum = dΩ̃(A, B, C)
};
BianchiResidual bianchi_residual(const FedosovContext& ctx, const TraceDensity& rho,
                                 const TangentS3& A, const TangentS3& B, const TangentS3& C);

/// ν-order through which σ((1/ν)[·,·]) of order-N flat sections is exact.
inline int trusted_bracket_order(const FedosovContext& ctx) { return ctx.order() / 2 - 1; }

} // namespace fedosov

#endif // FEDOSOV_MOMENT_HPP
