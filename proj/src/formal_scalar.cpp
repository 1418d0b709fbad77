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

#include "fedosov/formal_scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fedosov {

ParamCoeff FormalScalar::coefficient(int k) const {
  int i = k - valuation_;
  if (i < 0 || i >= int(coeffs_.size())) return ParamCoeff();
  return coeffs_[std::size_t(i)];
}

bool FormalScalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ParamCoeff& c) { return c.is_zero(); });
}

FormalScalar FormalScalar::truncated(int k) const {
  FormalScalar r = *this;
  int keep = std::max(0, k - valuation_ + 1);
  if (keep < int(r.coeffs_.size())) r.coeffs_.resize(std::size_t(keep));
  return r;
}

FormalScalar FormalScalar::scaled(const Complex& c) const {
  FormalScalar r = *this;
  for (auto& x : r.coeffs_) x = x * c;
  return r;
}

FormalScalar FormalScalar::param_diff(Param p) const {
  FormalScalar r = *this;
  for (auto& x : r.coeffs_) x = x.diff(p);
  return r;
}

FormalScalar FormalScalar::param_evaluate(Param p, const Rational& v) const {
  FormalScalar r = *this;
  for (auto& x : r.coeffs_) x = x.evaluate(p, v);
  return r;
}

FormalScalar FormalScalar::param_integrate(Param p, const Rational& from, const Rational& to) const {
  FormalScalar r = *this;
  for (auto& x : r.coeffs_) x = x.integrate(p, from, to);
  return r;
}

FormalScalar& FormalScalar::operator+=(const FormalScalar& o) {
  if (o.pi_power_ != pi_power_ || o.inv_two_pi_nu_ != inv_two_pi_nu_) {
    bool this_zero = is_zero(), other_zero = o.is_zero();
    if (other_zero) return *this;
    if (!this_zero) throw std::invalid_argument("formal scalars with different prefactors");
    pi_power_ = o.pi_power_;
    inv_two_pi_nu_ = o.inv_two_pi_nu_;
  }
  int lo = std::min(valuation_, o.valuation_);
  int hi = std::min(top(), o.top());
  std::vector<ParamCoeff> c;
  for (int k = lo; k <= hi; ++k) c.push_back(coefficient(k) + o.coefficient(k));
  valuation_ = lo;
  coeffs_ = std::move(c);
  return *this;
}

bool operator==(const FormalScalar& a, const FormalScalar& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.pi_power_ != b.pi_power_ || a.inv_two_pi_nu_ != b.inv_two_pi_nu_) return false;
  int lo = std::min(a.valuation_, b.valuation_), hi = std::max(a.top(), b.top());
  for (int k = lo; k <= hi; ++k)
    if (a.coefficient(k) != b.coefficient(k)) return false;
  return true;
}

std::string FormalScalar::to_string() const {
  std::ostringstream os;
  if (inv_two_pi_nu_ != 0) os << "(2*pi*nu)^" << -inv_two_pi_nu_ << " * ";
  if (pi_power_ != 0) os << "pi^" << pi_power_ << " * ";
  os << "(";
  bool first = true;
  for (int k = valuation_; k <= top(); ++k) {
    if (!first) os << " + ";
    first = false;
    ParamCoeff c = coefficient(k);
    bool compound = c.terms().size() > 1;
    if (compound) os << "(";
    os << c.to_string();
    if (compound) os << ")";
    if (k != 0) os << "*nu^" << k;
  }
  if (first) os << "0";
  os << ")";
  return os.str();
}

} // namespace fedosov
