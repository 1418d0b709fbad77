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

#ifndef FEDOSOV_FEDOSOV_HPP
#define FEDOSOV_FEDOSOV_HPP

#include <stdexcept>
#include <string>

#include "fedosov/geometry.hpp"
#include "fedosov/weyl.hpp"

namespace fedosov {

/// Raised when an element that must be D-flat is not.
class FlatnessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// ∂a = da + (1/ν)[Γ̄, a].
WeylElement partial_op(const WeylElement& gamma_bar, const WeylElement& a);

/// A connection with its solved Fedosov data (Ω = 0).
///
/// Connection coefficients may depend on the formal parameters; everything
/// is then computed over the parameter ring under the caller's caps.
class FedosovContext {
public:
  /// Solves r = δ⁻¹(R̄ + ∂r + (1/ν) r∘r) degree by degree. Requires N ≥ 3.
  static FedosovContext solve(const SymplecticConnection& c, int order);

  const SymplecticConnection& connection() const { return c_; }
  int n() const { return c_.n(); }
  int order() const { return order_; }
  /// Highest ν-order of σ(Q F ∘ Q G) that is fully determined.
  int nu_order() const { return order_ / 2; }
  /// Always zero here; kept explicit as the Fedosov curvature.
  const char* omega_series() const { return "0"; }

  /// The same data with the parameter p set to zero.
  FedosovContext at_zero(Param p) const;

  const WeylElement& r() const { return r_; }
  const WeylElement& gamma_bar() const { return gamma_bar_; }
  const WeylElement& r_bar() const { return r_bar_; }

  WeylElement partial(const WeylElement& a) const { return partial_op(gamma_bar_, a); }
  /// D a = ∂a − δa + (1/ν)[r, a].
  WeylElement D(const WeylElement& a) const;
  /// R̄ + ∂r − δr + (1/ν) r∘r; vanishes through degree N − 1.
  WeylElement r_equation_residual() const;

  /// Q = Σ_k (δ⁻¹(∂ + (1/ν)[r,·]))^k applied to F.
  WeylElement quantize(const FormalFunction& F) const;
  WeylElement quantize(const ScalarFn& f) const;
  /// σ(Q F ∘ Q G) through ν^{⌊N/2⌋}.
  FormalFunction star(const FormalFunction& F, const FormalFunction& G) const;
  FormalFunction star(const ScalarFn& f, const ScalarFn& g) const;
  /// (1/ν)(F★G − G★F) computed as σ((1/ν)[QF, QG]).
  FormalFunction star_commutator_over_nu(const FormalFunction& F, const FormalFunction& G) const;

  /// Unique a with Da = b and σ(a) = 0, as a = −Q(δ⁻¹b). Throws FlatnessError
  /// when D b has a nonzero component at total degree ≤ check_degree
  /// (default N − 2).
  WeylElement d_inverse(const WeylElement& b, int check_degree = -1) const;

private:
  FedosovContext(SymplecticConnection c, int order) : c_(std::move(c)), order_(order) {}
  // Fixed point a = seed + δ⁻¹(∂a + (1/ν)[r,a]).
  WeylElement fixed_point(const WeylElement& seed) const;

  SymplecticConnection c_;
  int order_;
  WeylElement r_, gamma_bar_, r_bar_;
};

/// Total degree of the lowest nonzero component of a, or -1 if a = 0.
inline int lowest_degree(const WeylElement& a) { return a.min_degree(); }

} // namespace fedosov

#endif // FEDOSOV_FEDOSOV_HPP
