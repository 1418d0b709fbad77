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

#ifndef FEDOSOV_RATIONAL_HPP
#define FEDOSOV_RATIONAL_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fedosov {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// combined with 128-bit intermediates; anything larger is promoted to a
/// shared, immutable GMP rational. Results are demoted back to the inline
/// form whenever they fit again, so the representation of a value is
/// canonical.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {} // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed
  /// input or a zero denominator.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  mpq_class to_mpq() const;
  std::string to_string() const;
  double to_double() const;

  /// Numerator and denominator as decimal strings.
  std::string numerator_string() const;
  std::string denominator_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.to_string();
  }

private:
  static Rational from_i128(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

/// Gaussian rational a + b·i.
struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(Rational r) : re(std::move(r)) {} // NOLINT(implicit)
  Complex(std::int64_t r) : re(r) {}        // NOLINT(implicit)
  Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Complex conj() const { return {re, -im}; }

  /// "a", "b*i" or "a + b*i" with rationals in canonical "p/q" form.
  std::string to_string() const;

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    if (!o.im.is_zero()) im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Rational& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Complex& c) {
    return os << c.to_string();
  }
};

} // namespace fedosov

#endif // FEDOSOV_RATIONAL_HPP
