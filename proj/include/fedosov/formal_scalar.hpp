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

#ifndef FEDOSOV_FORMAL_SCALAR_HPP
#define FEDOSOV_FORMAL_SCALAR_HPP

#include <string>
#include <vector>

#include "fedosov/scalar_ring.hpp"

namespace fedosov {

/// (2πν)^{-m} · π^p · Σ_k c_k ν^{v+k}, with the prefactor kept as tags.
class FormalScalar {
public:
  FormalScalar() = default;
  FormalScalar(int valuation, std::vector<ParamCoeff> coeffs, int pi_power = 0,
               int inv_two_pi_nu = 0)
      : valuation_(valuation), pi_power_(pi_power), inv_two_pi_nu_(inv_two_pi_nu),
        coeffs_(std::move(coeffs)) {}

  /// Exponent of ν attached to the first stored coefficient.
  int valuation() const { return valuation_; }
  /// Highest ν exponent carried (valuation + size − 1).
  int top() const { return valuation_ + int(coeffs_.size()) - 1; }
  int pi_power() const { return pi_power_; }
  int inv_two_pi_nu() const { return inv_two_pi_nu_; }
  const std::vector<ParamCoeff>& coeffs() const { return coeffs_; }
  /// Coefficient of ν^k (zero outside the stored range).
  ParamCoeff coefficient(int k) const;
  bool is_zero() const;

  /// Keeps ν exponents ≤ k.
  FormalScalar truncated(int k) const;
  FormalScalar scaled(const Complex& c) const;
  FormalScalar param_diff(Param p) const;
  FormalScalar param_evaluate(Param p, const Rational& v) const;
  /// ∫_from^to coefficientwise.
  FormalScalar param_integrate(Param p, const Rational& from, const Rational& to) const;

  /// Requires matching tags; the range is the intersection of both tops.
  FormalScalar& operator+=(const FormalScalar& o);
  FormalScalar operator-() const { return scaled(Complex(-1)); }
  friend FormalScalar operator+(FormalScalar a, const FormalScalar& b) { return a += b; }
  friend FormalScalar operator-(FormalScalar a, const FormalScalar& b) { return a += -b; }
  friend bool operator==(const FormalScalar& a, const FormalScalar& b);

  /// "(2*pi*nu)^-1 * pi^2 * (1/2*nu^-2 + 0 + 3*nu)" style rendering.
  std::string to_string() const;

private:
  int valuation_ = 0;
  int pi_power_ = 0;
  int inv_two_pi_nu_ = 0;
  std::vector<ParamCoeff> coeffs_;
};

inline void PrintTo(const FormalScalar& f, std::ostream* os) { *os << f.to_string(); }

} // namespace fedosov

#endif // FEDOSOV_FORMAL_SCALAR_HPP
