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

#ifndef FEDOSOV_WEYL_HPP
#define FEDOSOV_WEYL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fedosov/scalar_ring.hpp"

namespace fedosov {

/// Constant Darboux data for ω = Σ_i dx^i ∧ dx^{n+i}; Λ = ω^{-1}.
struct SymplecticData {
  int n = 1;

  int dim() const { return 2 * n; }
  /// ω_{ij}: +1 at (i, n+i), -1 at (n+i, i).
  int omega(int i, int j) const {
    if (j == i + n && i < n) return 1;
    if (i == j + n && j < n) return -1;
    return 0;
  }
  /// Λ^{ij}: -1 at (i, n+i), +1 at (n+i, i).
  int lambda(int i, int j) const { return -omega(i, j); }
  /// The single nonzero partner index of i, i.e. i ± n.
  int partner(int i) const { return i < n ? i + n : i - n; }
};

using YExponents = std::array<int, kMaxTorusDim>;

/// Packed (ν-power, y-exponents, dx-mask) index of a Weyl monomial.
/// Keys order by total degree first, which makes degree-window scans cheap.
class WeylKey {
public:
  static constexpr int kNuBias = 128;

  WeylKey() = default;
  WeylKey(int nu, const YExponents& y, unsigned dx_mask);

  static WeylKey from_bits(std::uint64_t b) {
    WeylKey k;
    k.bits_ = b;
    return k;
  }
  std::uint64_t bits() const { return bits_; }

  unsigned dx_mask() const { return unsigned(bits_ & 0xf); }
  int y(int i) const { return int((bits_ >> (4 + 8 * i)) & 0xff); }
  YExponents y_exponents() const;
  int nu() const { return int((bits_ >> 36) & 0xff) - kNuBias; }
  int total_degree() const { return int((bits_ >> 48) & 0xff); }
  int y_degree() const { return total_degree() - 2 * nu(); }
  int form_degree() const { return __builtin_popcount(dx_mask()); }

  friend bool operator==(WeylKey a, WeylKey b) { return a.bits_ == b.bits_; }
  friend bool operator!=(WeylKey a, WeylKey b) { return a.bits_ != b.bits_; }
  friend bool operator<(WeylKey a, WeylKey b) { return a.bits_ < b.bits_; }

  /// "nu^k y1^a y2^b dx1^dx2" style label.
  std::string to_string(int n) const;

private:
  std::uint64_t bits_ = std::uint64_t(kNuBias) << 36;
};

/// ν-series Σ_{k=0}^{order} ν^k F_k of torus functions.
class FormalFunction {
public:
  FormalFunction() = default;
  FormalFunction(int n, int order) : n_(n), coeffs_(std::size_t(order + 1), ScalarFn(n)) {}
  static FormalFunction from_scalar(const ScalarFn& f, int order);

  int n() const { return n_; }
  int order() const { return int(coeffs_.size()) - 1; }
  const ScalarFn& operator[](int k) const { return coeffs_.at(std::size_t(k)); }
  ScalarFn& operator[](int k) { return coeffs_.at(std::size_t(k)); }
  const std::vector<ScalarFn>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// Lowest k with F_k ≠ 0, or -1 if zero.
  int valuation() const;

  FormalFunction truncated(int order) const;
  FormalFunction param_diff(Param p) const;
  FormalFunction param_evaluate(Param p, const Rational& v) const;
  FormalFunction param_integrate(Param p) const;
  FormalFunction scaled(const Complex& c) const;
  /// Multiplication by ν^shift (shift may be negative if low terms vanish).
  FormalFunction nu_shifted(int shift) const;

  FormalFunction& operator+=(const FormalFunction& o);
  FormalFunction& operator-=(const FormalFunction& o);
  friend FormalFunction operator+(FormalFunction a, const FormalFunction& b) { return a += b; }
  friend FormalFunction operator-(FormalFunction a, const FormalFunction& b) { return a -= b; }
  FormalFunction operator-() const { return scaled(Complex(-1)); }
  friend bool operator==(const FormalFunction& a, const FormalFunction& b);
  friend bool operator!=(const FormalFunction& a, const FormalFunction& b) { return !(a == b); }

  std::string to_string() const;

private:
  int n_ = 1;
  std::vector<ScalarFn> coeffs_;
};

/// Truncated section of 𝒲(+) ⊗ Λ over T^{2n}.
///
/// Terms are stored as runs: one sorted WeylKey per run, each pointing at a
/// sorted block of Fourier monomials. Only total degrees 0..N are kept.
class WeylElement {
public:
  struct Run {
    WeylKey key;
    std::uint32_t begin;
    std::uint32_t end;
  };

  WeylElement() = default;
  WeylElement(int n, int order, bool extended = false)
      : n_(n), order_(order), extended_(extended) {}

  static WeylElement from_scalar(int n, int order, const ScalarFn& f);
  static WeylElement monomial(int n, int order, WeylKey key, const ScalarFn& f,
                              bool extended = false);
  /// y^i (coefficient 1).
  static WeylElement y(int n, int order, int i);
  static WeylElement nu(int n, int order, int power = 1);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int order() const { return order_; }
  bool extended() const { return extended_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return runs_.empty(); }
  std::size_t num_runs() const { return runs_.size(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::vector<Run>& runs() const { return runs_; }
  std::span<const MonoTerm> run_terms(const Run& r) const {
    return std::span<const MonoTerm>(terms_).subspan(r.begin, r.end - r.begin);
  }

  ScalarFn coefficient(WeylKey k) const;
  int min_degree() const; // -1 when zero
  int max_degree() const; // -1 when zero
  /// Part with total degree exactly d (resp. in [lo, hi]).
  WeylElement degree_part(int d) const { return degree_range(d, d); }
  WeylElement degree_range(int lo, int hi) const;
  WeylElement form_part(int q) const;
  /// Same data at a different truncation order (drops degrees above it).
  WeylElement with_order(int order) const;
  WeylElement as_extended() const;

  /// σ: y-degree 0, form-degree 0 part as a ν-series.
  FormalFunction symbol() const;

  WeylElement operator-() const { return scaled(Complex(-1)); }
  WeylElement scaled(const Complex& c) const;
  /// Multiplies every coefficient by the torus function f.
  WeylElement times_function(const ScalarFn& f) const;
  /// Multiplication by ν^k (degree shifts by 2k; terms beyond N dropped).
  WeylElement nu_shifted(int k) const;
  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend bool operator==(const WeylElement& a, const WeylElement& b);
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  // Parameter calculus applied coefficientwise.
  WeylElement param_diff(Param p) const;
  WeylElement param_integrate(Param p) const;
  WeylElement param_evaluate(Param p, const Rational& v) const;
  WeylElement param_coefficient(Param p, int degree) const;
  /// Largest exponent of p present.
  int param_degree(Param p) const;

  /// Coefficientwise map on runs; `fn` may return a zero ScalarFn.
  WeylElement map_coefficients(const std::function<ScalarFn(WeylKey, const ScalarFn&)>& fn) const;

  std::string to_string() const;

  /// Internal builder: takes an unsorted soup of (key, monomial, coefficient)
  /// and produces the canonical element.
  struct Entry {
    std::uint64_t key;
    MonoKey mono;
    Complex coeff;
  };
  static WeylElement from_entries(int n, int order, bool extended, std::vector<Entry> soup,
                                  bool truncated);

private:
  friend class WeylOps;
  int n_ = 1;
  int order_ = 0;
  bool extended_ = false;
  bool truncated_ = false;
  std::vector<Run> runs_;
  std::vector<MonoTerm> terms_;
};

inline void PrintTo(const WeylElement& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const FormalFunction& f, std::ostream* os) { *os << f.to_string(); }

/// Fiberwise ∘-product of Weyl-algebra-valued forms, truncated at the order.
WeylElement circ(const WeylElement& a, const WeylElement& b);
/// Graded commutator a∘b − (−1)^{q₁q₂} b∘a.
WeylElement graded_commutator(const WeylElement& a, const WeylElement& b);
/// (1/ν)·[a, b], computed directly (never leaves the nonnegative ν range).
WeylElement commutator_over_nu(const WeylElement& a, const WeylElement& b);
/// Same products restricted to output total degrees in [lo, hi].
WeylElement circ(const WeylElement& a, const WeylElement& b, int lo, int hi);
WeylElement commutator_over_nu(const WeylElement& a, const WeylElement& b, int lo, int hi);
/// σ(a∘b) and σ((1/ν)[a, b]) without forming the full product.
FormalFunction circ_symbol(const WeylElement& a, const WeylElement& b);
FormalFunction commutator_over_nu_symbol(const WeylElement& a, const WeylElement& b);
/// Means over the torus of the ν^k coefficients of commutator_over_nu_symbol, k = 0..N/2.
std::vector<ParamCoeff> commutator_over_nu_symbol_mean(const WeylElement& a,
                                                       const WeylElement& b);

/// δa = Σ_k dx^k ∧ ∂_{y^k} a.
WeylElement delta(const WeylElement& a);
/// δ⁻¹ a_{pq} = (1/(p+q)) y^k ι(∂_{x^k}) a_{pq}, zero on (0,0).
WeylElement delta_inv(const WeylElement& a);
/// Exterior derivative in x: Σ_j dx^j ∧ ∂_{x^j} a.
WeylElement exterior_d(const WeylElement& a);
/// Contraction ι(Σ_j X^j ∂_{x^j}) with a vector field of torus functions.
WeylElement interior(const std::vector<ScalarFn>& X, const WeylElement& a);
/// Σ_j f_j dx^j ∧ a.
WeylElement wedge_one_form(const std::vector<ScalarFn>& f, const WeylElement& a);
/// Drops all terms above total degree N'.
WeylElement truncate(const WeylElement& a, int order);
FormalFunction symbol(const WeylElement& a);

/// Sign of dx^k ∧ dx^I relative to the sorted mask I ∪ {k}; 0 if k ∈ I.
int wedge_sign(int k, unsigned mask);
/// Sign of dx^I ∧ dx^J relative to the sorted union; 0 if they meet.
int wedge_sign(unsigned left, unsigned right);

} // namespace fedosov

#endif // FEDOSOV_WEYL_HPP
