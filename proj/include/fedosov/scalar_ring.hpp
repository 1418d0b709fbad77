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

#ifndef FEDOSOV_SCALAR_RING_HPP
#define FEDOSOV_SCALAR_RING_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fedosov/rational.hpp"

namespace fedosov {

/// Formal parameters. `t` and `s` are the path and disk parameters; `u` is an
/// auxiliary direction used when three independent variations of a
/// connection are needed at once.
enum class Param : int { t = 0, s = 1, u = 2 };
inline constexpr int kNumParams = 3;
inline constexpr int kMaxTorusDim = 4; // 2n <= 4

const char* param_name(Param p);

/// Per-thread degree caps on the formal parameters. Products exceeding a cap
/// are truncated and the result is flagged.
struct ParamCaps {
  std::array<int, kNumParams> max_degree{64, 64, 64};

  static const ParamCaps& current();
};

/// Installs caps for the lifetime of the scope (restores the previous caps).
class ParamCapScope {
public:
  explicit ParamCapScope(ParamCaps caps);
  ParamCapScope(int t_cap, int s_cap, int u_cap = 64);
  ~ParamCapScope();
  ParamCapScope(const ParamCapScope&) = delete;
  ParamCapScope& operator=(const ParamCapScope&) = delete;

private:
  ParamCaps saved_;
};

using Frequency = std::array<int, kMaxTorusDim>;
using ParamExponents = std::array<int, kNumParams>;

/// Packed monomial e^{i k·x} t^a s^b u^c. Frequencies are stored biased in
/// 10-bit fields, parameter exponents in 8-bit fields; addition of packed
/// keys multiplies monomials as long as every field stays in range.
class MonoKey {
public:
  static constexpr int kFreqBits = 10;
  static constexpr int kFreqBias = 1 << (kFreqBits - 1);
  static constexpr int kMaxFreq = kFreqBias - 1;
  static constexpr int kParamBits = 8;
  static constexpr int kMaxParamDegree = 127;

  constexpr MonoKey() : bits_(bias_bits()) {}
  MonoKey(const Frequency& k, const ParamExponents& p);

  static constexpr MonoKey from_bits(std::uint64_t b) { return MonoKey(b, 0); }
  std::uint64_t bits() const { return bits_; }

  int freq(int j) const {
    return int((bits_ >> (kFreqBits * j)) & ((1u << kFreqBits) - 1)) - kFreqBias;
  }
  Frequency frequency() const;
  int param(Param p) const {
    return int((bits_ >> (kFreqBits * kMaxTorusDim + kParamBits * int(p))) & 0xff);
  }
  ParamExponents params() const;
  bool has_params() const { return (bits_ >> (kFreqBits * kMaxTorusDim)) != 0; }
  bool is_constant_frequency() const {
    return (bits_ & freq_mask()) == (bias_bits() & freq_mask());
  }

  MonoKey with_param(Param p, int degree) const;
  MonoKey without_params() const;
  MonoKey negated_frequency() const;

  /// Product of monomials. Caller guarantees fields stay in range.
  friend MonoKey operator*(MonoKey a, MonoKey b) {
    return MonoKey(a.bits_ + b.bits_ - bias_bits(), 0);
  }
  friend bool operator==(MonoKey a, MonoKey b) { return a.bits_ == b.bits_; }
  friend bool operator!=(MonoKey a, MonoKey b) { return a.bits_ != b.bits_; }
  friend bool operator<(MonoKey a, MonoKey b) { return a.bits_ < b.bits_; }

private:
  constexpr MonoKey(std::uint64_t b, int) : bits_(b) {}
  static constexpr std::uint64_t bias_bits() {
    std::uint64_t b = 0;
    for (int j = 0; j < kMaxTorusDim; ++j) b |= std::uint64_t(kFreqBias) << (kFreqBits * j);
    return b;
  }
  static constexpr std::uint64_t freq_mask() {
    return (std::uint64_t(1) << (kFreqBits * kMaxTorusDim)) - 1;
  }

  std::uint64_t bits_;
};

using MonoTerm = std::pair<MonoKey, Complex>;

/// Sorts by key, sums duplicates and drops zeros.
void canonicalize_terms(std::vector<MonoTerm>& terms);

/// Polynomial in the formal parameters with Gaussian-rational coefficients.
class ParamCoeff {
public:
  ParamCoeff() = default;
  ParamCoeff(Complex c); // NOLINT(implicit)
  ParamCoeff(Rational c) : ParamCoeff(Complex(std::move(c))) {} // NOLINT(implicit)
  ParamCoeff(std::int64_t c) : ParamCoeff(Complex(c)) {}       // NOLINT(implicit)

  static ParamCoeff monomial(Complex c, const ParamExponents& p);
  static ParamCoeff variable(Param p) { return monomial(Complex(1), unit(p)); }
  static ParamExponents unit(Param p) {
    ParamExponents e{0, 0, 0};
    e[int(p)] = 1;
    return e;
  }

  /// Terms sorted by exponent vector; keys are MonoKeys with zero frequency.
  const std::vector<MonoTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool truncated() const { return truncated_; }
  int degree(Param p) const;
  /// Constant term (value at t = s = u = 0).
  Complex constant() const;
  Complex coefficient(const ParamExponents& p) const;

  ParamCoeff diff(Param p) const;
  /// Antiderivative in p vanishing at p = 0 (formal upper bound).
  ParamCoeff integrate(Param p) const;
  ParamCoeff integrate(Param p, const Rational& from, const Rational& to) const;
  ParamCoeff evaluate(Param p, const Rational& value) const;
  ParamCoeff conj() const;

  std::string to_string() const;

  ParamCoeff operator-() const;
  ParamCoeff& operator+=(const ParamCoeff& o);
  ParamCoeff& operator-=(const ParamCoeff& o);
  friend ParamCoeff operator+(ParamCoeff a, const ParamCoeff& b) { return a += b; }
  friend ParamCoeff operator-(ParamCoeff a, const ParamCoeff& b) { return a -= b; }
  friend ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b);
  friend ParamCoeff operator*(ParamCoeff a, const Complex& c);
  friend bool operator==(const ParamCoeff& a, const ParamCoeff& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ParamCoeff& a, const ParamCoeff& b) { return !(a == b); }

private:
  friend class ScalarFn;
  std::vector<MonoTerm> terms_;
  bool truncated_ = false;
};

/// Exact trigonometric polynomial on T^{2n}: Σ_k c_k(t,s,u) e^{i k·x}.
///
/// Stored flat as sorted (monomial, coefficient) pairs with no zero
/// coefficients. Every value is immutable once built.
class ScalarFn {
public:
  explicit ScalarFn(int n = 1) : n_(n) {}
  static ScalarFn constant(int n, const ParamCoeff& c);
  static ScalarFn constant(int n, const Complex& c) { return constant(n, ParamCoeff(c)); }
  static ScalarFn exponential(int n, const Frequency& k, const Complex& c = Complex(1));
  /// cos(k·x) and sin(k·x).
  static ScalarFn cos(int n, const Frequency& k, const Rational& scale = Rational(1));
  static ScalarFn sin(int n, const Frequency& k, const Rational& scale = Rational(1));
  /// Builds from raw terms; with `real_valued` set, validates c_{-k} = conj(c_k)
  /// and throws std::invalid_argument otherwise.
  static ScalarFn from_terms(int n, std::vector<MonoTerm> terms, bool real_valued = false);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  std::span<const MonoTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  bool real_flag() const { return real_; }
  /// True when c_{-k} = conj(c_k) holds exactly.
  bool is_real_valued() const;
  int max_abs_frequency() const;
  int degree(Param p) const;

  /// Fourier coefficient at frequency k (a parameter polynomial).
  ParamCoeff coefficient(const Frequency& k) const;
  /// Zero-frequency coefficient (the mean value).
  ParamCoeff mean() const { return coefficient(Frequency{}); }

  ScalarFn partial(int j) const;
  ScalarFn param_diff(Param p) const;
  ScalarFn param_integrate(Param p) const;
  ScalarFn param_integrate(Param p, const Rational& from, const Rational& to) const;
  ScalarFn param_evaluate(Param p, const Rational& value) const;
  /// Coefficient of p^degree (drops the p-dependence).
  ScalarFn param_coefficient(Param p, int degree) const;
  ScalarFn conj() const;
  ScalarFn scaled(const Complex& c) const;
  ScalarFn times(const ParamCoeff& c) const;

  ScalarFn operator-() const { return scaled(Complex(-1)); }
  ScalarFn& operator+=(const ScalarFn& o);
  ScalarFn& operator-=(const ScalarFn& o);
  friend ScalarFn operator+(ScalarFn a, const ScalarFn& b) { return a += b; }
  friend ScalarFn operator-(ScalarFn a, const ScalarFn& b) { return a -= b; }
  friend ScalarFn operator*(const ScalarFn& a, const ScalarFn& b) { return ring_mul(a, b); }
  friend ScalarFn operator*(const ScalarFn& a, const Complex& c) { return a.scaled(c); }
  friend bool operator==(const ScalarFn& a, const ScalarFn& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const ScalarFn& a, const ScalarFn& b) { return !(a == b); }

  friend ScalarFn ring_mul(const ScalarFn& f, const ScalarFn& g);

  std::string to_string() const;

private:
  int n_;
  bool truncated_ = false;
  bool real_ = false;
  std::vector<MonoTerm> terms_;
};

inline void PrintTo(const ScalarFn& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const ParamCoeff& c, std::ostream* os) { *os << c.to_string(); }

/// Convolution kernel shared with the Weyl algebra: appends all products
/// f_i · g_j · scale to `out` (unsorted), honouring the parameter caps.
/// Returns true if any product was dropped by a cap.
bool convolve_into(std::span<const MonoTerm> f, std::span<const MonoTerm> g,
                   std::vector<MonoTerm>& out);

/// True when the product of monomials a·b respects the current caps.
bool within_caps(MonoKey product);

/// Throws if frequencies of f·g could leave the packed range.
void check_frequency_range(int max_f, int max_g);

/// ∫_{T^{2n}} f dx = c_0 · (2π)^{2n}. Returned as the rational-polynomial
/// part together with the power of π.
struct TorusIntegral {
  ParamCoeff value; // multiplies pi^pi_power
  int pi_power = 0;

  std::string to_string() const;
};

TorusIntegral integrate_torus(const ScalarFn& f);

ScalarFn partial(const ScalarFn& f, int j);
ScalarFn param_diff(const ScalarFn& f, Param p);
ScalarFn param_integrate(const ScalarFn& f, Param p);
ScalarFn param_integrate(const ScalarFn& f, Param p, const Rational& from, const Rational& to);

} // namespace fedosov

#endif // FEDOSOV_SCALAR_RING_HPP
