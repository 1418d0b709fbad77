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

#include "fedosov/scalar_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace fedosov {

const char* param_name(Param p) {
  switch (p) {
  case Param::t: return "t";
  case Param::s: return "s";
  case Param::u: return "u";
  }
  return "?";
}

namespace {
thread_local ParamCaps g_caps;
}

const ParamCaps& ParamCaps::current() { return g_caps; }

ParamCapScope::ParamCapScope(ParamCaps caps) : saved_(g_caps) {
  for (int c : caps.max_degree)
    if (c < 0 || c > MonoKey::kMaxParamDegree)
      throw std::invalid_argument("parameter cap out of range [0, 127]");
  g_caps = caps;
}

ParamCapScope::ParamCapScope(int t_cap, int s_cap, int u_cap)
    : ParamCapScope(ParamCaps{{t_cap, s_cap, u_cap}}) {}

ParamCapScope::~ParamCapScope() { g_caps = saved_; }

// ---------------------------------------------------------------------------
// MonoKey

MonoKey::MonoKey(const Frequency& k, const ParamExponents& p) : bits_(0) {
  for (int j = 0; j < kMaxTorusDim; ++j) {
    if (std::abs(k[j]) > kMaxFreq) throw std::out_of_range("frequency out of packed range");
    bits_ |= std::uint64_t(k[j] + kFreqBias) << (kFreqBits * j);
  }
  for (int q = 0; q < kNumParams; ++q) {
    if (p[q] < 0 || p[q] > kMaxParamDegree) throw std::out_of_range("parameter degree out of range");
    bits_ |= std::uint64_t(p[q]) << (kFreqBits * kMaxTorusDim + kParamBits * q);
  }
}

Frequency MonoKey::frequency() const {
  Frequency k{};
  for (int j = 0; j < kMaxTorusDim; ++j) k[j] = freq(j);
  return k;
}

ParamExponents MonoKey::params() const {
  return {param(Param::t), param(Param::s), param(Param::u)};
}

MonoKey MonoKey::with_param(Param p, int degree) const {
  int shift = kFreqBits * kMaxTorusDim + kParamBits * int(p);
  std::uint64_t b = bits_ & ~(std::uint64_t(0xff) << shift);
  return MonoKey(b | (std::uint64_t(degree) << shift), 0);
}

MonoKey MonoKey::without_params() const { return MonoKey(bits_ & freq_mask(), 0); }

MonoKey MonoKey::negated_frequency() const {
  Frequency k = frequency();
  for (int& v : k) v = -v;
  return MonoKey(k, params());
}

bool within_caps(MonoKey product) {
  const auto& caps = ParamCaps::current().max_degree;
  if (!product.has_params()) return true;
  for (int q = 0; q < kNumParams; ++q)
    if (product.param(Param(q)) > caps[q]) return false;
  return true;
}

void check_frequency_range(int max_f, int max_g) {
  if (max_f + max_g > MonoKey::kMaxFreq)
    throw std::overflow_error("frequency support exceeds packed range");
}

void canonicalize_terms(std::vector<MonoTerm>& terms) {
  if (terms.empty()) return;
  std::sort(terms.begin(), terms.end(),
            [](const MonoTerm& a, const MonoTerm& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size();) {
    MonoKey key = terms[r].first;
    Complex acc = std::move(terms[r].second);
    std::size_t q = r + 1;
    for (; q < terms.size() && terms[q].first == key; ++q) acc += terms[q].second;
    if (!acc.is_zero()) terms[w++] = MonoTerm(key, std::move(acc));
    r = q;
  }
  terms.resize(w);
}

bool convolve_into(std::span<const MonoTerm> f, std::span<const MonoTerm> g,
                   std::vector<MonoTerm>& out) {
  bool dropped = false;
  bool any_params = false;
  for (const auto& a : f) any_params |= a.first.has_params();
  for (const auto& b : g) any_params |= b.first.has_params();
  out.reserve(out.size() + f.size() * g.size());
  for (const auto& a : f) {
    for (const auto& b : g) {
      MonoKey k = a.first * b.first;
      if (any_params && !within_caps(k)) {
        dropped = true;
        continue;
      }
      out.emplace_back(k, a.second * b.second);
    }
  }
  return dropped;
}

// ---------------------------------------------------------------------------
// ParamCoeff

ParamCoeff::ParamCoeff(Complex c) {
  if (!c.is_zero()) terms_.emplace_back(MonoKey(), std::move(c));
}

ParamCoeff ParamCoeff::monomial(Complex c, const ParamExponents& p) {
  ParamCoeff r;
  if (!c.is_zero()) r.terms_.emplace_back(MonoKey(Frequency{}, p), std::move(c));
  return r;
}

bool ParamCoeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && !terms_[0].first.has_params());
}

int ParamCoeff::degree(Param p) const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.param(p));
  return d;
}

Complex ParamCoeff::constant() const { return coefficient({0, 0, 0}); }

Complex ParamCoeff::coefficient(const ParamExponents& p) const {
  MonoKey key(Frequency{}, p);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const MonoTerm& t, MonoKey k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return Complex();
}

ParamCoeff ParamCoeff::diff(Param p) const {
  ParamCoeff r;
  for (const auto& [k, c] : terms_) {
    int d = k.param(p);
    if (d == 0) continue;
    r.terms_.emplace_back(k.with_param(p, d - 1), c * Rational(d));
  }
  canonicalize_terms(r.terms_);
  r.truncated_ = truncated_;
  return r;
}

ParamCoeff ParamCoeff::integrate(Param p) const {
  ParamCoeff r;
  int cap = ParamCaps::current().max_degree[int(p)];
  for (const auto& [k, c] : terms_) {
    int d = k.param(p);
    if (d + 1 > cap) {
      r.truncated_ = true;
      continue;
    }
    r.terms_.emplace_back(k.with_param(p, d + 1), c * Rational(1, d + 1));
  }
  canonicalize_terms(r.terms_);
  r.truncated_ |= truncated_;
  return r;
}

ParamCoeff ParamCoeff::integrate(Param p, const Rational& from, const Rational& to) const {
  ParamCoeff anti;
  for (const auto& [k, c] : terms_)
    anti.terms_.emplace_back(k.with_param(p, k.param(p) + 1), c * Rational(1, k.param(p) + 1));
  canonicalize_terms(anti.terms_);
  ParamCoeff r = anti.evaluate(p, to) - anti.evaluate(p, from);
  r.truncated_ = truncated_;
  return r;
}

namespace {
Rational rpow(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}
} // namespace

ParamCoeff ParamCoeff::evaluate(Param p, const Rational& value) const {
  ParamCoeff r;
  for (const auto& [k, c] : terms_) {
    Rational w = rpow(value, k.param(p));
    if (w.is_zero()) continue;
    r.terms_.emplace_back(k.with_param(p, 0), c * w);
  }
  canonicalize_terms(r.terms_);
  r.truncated_ = truncated_;
  return r;
}

ParamCoeff ParamCoeff::conj() const {
  ParamCoeff r = *this;
  for (auto& [k, c] : r.terms_) c = c.conj();
  return r;
}

std::string ParamCoeff::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool compound = !c.re.is_zero() && !c.im.is_zero();
    if (compound) os << "(";
    os << c.to_string();
    if (compound) os << ")";
    for (int q = 0; q < kNumParams; ++q) {
      int d = k.param(Param(q));
      if (d == 0) continue;
      os << "*" << param_name(Param(q));
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

ParamCoeff ParamCoeff::operator-() const {
  ParamCoeff r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ParamCoeff& ParamCoeff::operator+=(const ParamCoeff& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize_terms(terms_);
  truncated_ |= o.truncated_;
  return *this;
}

ParamCoeff& ParamCoeff::operator-=(const ParamCoeff& o) { return *this += -o; }

ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b) {
  ParamCoeff r;
  r.truncated_ = convolve_into(a.terms_, b.terms_, r.terms_) || a.truncated_ || b.truncated_;
  canonicalize_terms(r.terms_);
  return r;
}

ParamCoeff operator*(ParamCoeff a, const Complex& c) {
  if (c.is_zero()) return ParamCoeff();
  for (auto& [k, v] : a.terms_) v = v * c;
  return a;
}

// ---------------------------------------------------------------------------
// ScalarFn

ScalarFn ScalarFn::constant(int n, const ParamCoeff& c) {
  ScalarFn f(n);
  f.terms_ = c.terms();
  f.truncated_ = c.truncated();
  return f;
}

ScalarFn ScalarFn::exponential(int n, const Frequency& k, const Complex& c) {
  ScalarFn f(n);
  for (int j = 2 * n; j < kMaxTorusDim; ++j)
    if (k[j] != 0) throw std::invalid_argument("frequency beyond torus dimension");
  if (!c.is_zero()) f.terms_.emplace_back(MonoKey(k, {0, 0, 0}), c);
  return f;
}

ScalarFn ScalarFn::cos(int n, const Frequency& k, const Rational& scale) {
  Frequency mk{};
  for (int j = 0; j < kMaxTorusDim; ++j) mk[j] = -k[j];
  Rational half = scale * Rational(1, 2);
  ScalarFn f = exponential(n, k, Complex(half)) + exponential(n, mk, Complex(half));
  f.real_ = true;
  return f;
}

ScalarFn ScalarFn::sin(int n, const Frequency& k, const Rational& scale) {
  Frequency mk{};
  for (int j = 0; j < kMaxTorusDim; ++j) mk[j] = -k[j];
  Rational half = scale * Rational(1, 2);
  // sin θ = (e^{iθ} - e^{-iθ}) / (2i)
  ScalarFn f = exponential(n, k, Complex(Rational(0), -half)) +
               exponential(n, mk, Complex(Rational(0), half));
  f.real_ = true;
  return f;
}

ScalarFn ScalarFn::from_terms(int n, std::vector<MonoTerm> terms, bool real_valued) {
  ScalarFn f(n);
  for (const auto& [k, c] : terms)
    for (int j = 2 * n; j < kMaxTorusDim; ++j)
      if (k.freq(j) != 0) throw std::invalid_argument("frequency beyond torus dimension");
  canonicalize_terms(terms);
  f.terms_ = std::move(terms);
  if (real_valued) {
    if (!f.is_real_valued())
      throw std::invalid_argument("real-valued function violates c(-k) = conj(c(k))");
    f.real_ = true;
  }
  return f;
}

bool ScalarFn::is_real_valued() const {
  for (const auto& [k, c] : terms_) {
    MonoKey mk = k.negated_frequency();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mk,
                               [](const MonoTerm& t, MonoKey key) { return t.first < key; });
    if (it == terms_.end() || it->first != mk || it->second != c.conj()) return false;
  }
  return true;
}

int ScalarFn::max_abs_frequency() const {
  int m = 0;
  for (const auto& [k, c] : terms_)
    for (int j = 0; j < dim(); ++j) m = std::max(m, std::abs(k.freq(j)));
  return m;
}

int ScalarFn::degree(Param p) const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.param(p));
  return d;
}

ParamCoeff ScalarFn::coefficient(const Frequency& k) const {
  ParamCoeff r;
  MonoKey lo(k, {0, 0, 0});
  // Keys order by parameter exponents first, so one frequency is spread over
  // one block per parameter monomial.
  if (terms_.empty() || !terms_.back().first.has_params()) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), lo,
                               [](const MonoTerm& t, MonoKey key) { return t.first < key; });
    if (it != terms_.end() && it->first == lo) r.terms_.emplace_back(MonoKey(), it->second);
  } else {
    for (const auto& [mk, c] : terms_)
      if (mk.without_params() == lo) r.terms_.emplace_back(MonoKey(Frequency{}, mk.params()), c);
  }
  r.truncated_ = truncated_;
  return r;
}

ScalarFn ScalarFn::partial(int j) const {
  if (j < 0 || j >= dim()) throw std::out_of_range("coordinate index out of range");
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  for (const auto& [k, c] : terms_) {
    int kj = k.freq(j);
    if (kj == 0) continue;
    // i·k_j · (a + b i) = -k_j b + k_j a i
    r.terms_.emplace_back(k, Complex(-c.im * Rational(kj), c.re * Rational(kj)));
  }
  return r;
}

ScalarFn ScalarFn::param_diff(Param p) const {
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  for (const auto& [k, c] : terms_) {
    int d = k.param(p);
    if (d == 0) continue;
    r.terms_.emplace_back(k.with_param(p, d - 1), c * Rational(d));
  }
  canonicalize_terms(r.terms_);
  return r;
}

ScalarFn ScalarFn::param_integrate(Param p) const {
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  int cap = ParamCaps::current().max_degree[int(p)];
  for (const auto& [k, c] : terms_) {
    int d = k.param(p);
    if (d + 1 > cap) {
      r.truncated_ = true;
      continue;
    }
    r.terms_.emplace_back(k.with_param(p, d + 1), c * Rational(1, d + 1));
  }
  canonicalize_terms(r.terms_);
  return r;
}

ScalarFn ScalarFn::param_evaluate(Param p, const Rational& value) const {
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  for (const auto& [k, c] : terms_) {
    Rational w = rpow(value, k.param(p));
    if (w.is_zero()) continue;
    r.terms_.emplace_back(k.with_param(p, 0), c * w);
  }
  canonicalize_terms(r.terms_);
  return r;
}

ScalarFn ScalarFn::param_integrate(Param p, const Rational& from, const Rational& to) const {
  ScalarFn anti(n_);
  anti.real_ = real_;
  for (const auto& [k, c] : terms_)
    anti.terms_.emplace_back(k.with_param(p, k.param(p) + 1), c * Rational(1, k.param(p) + 1));
  canonicalize_terms(anti.terms_);
  ScalarFn r = anti.param_evaluate(p, to) - anti.param_evaluate(p, from);
  r.truncated_ = truncated_;
  r.real_ = real_;
  return r;
}

ScalarFn ScalarFn::param_coefficient(Param p, int degree) const {
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  for (const auto& [k, c] : terms_)
    if (k.param(p) == degree) r.terms_.emplace_back(k.with_param(p, 0), c);
  canonicalize_terms(r.terms_);
  return r;
}

ScalarFn ScalarFn::conj() const {
  ScalarFn r(n_);
  r.real_ = real_;
  r.truncated_ = truncated_;
  for (const auto& [k, c] : terms_) r.terms_.emplace_back(k.negated_frequency(), c.conj());
  canonicalize_terms(r.terms_);
  return r;
}

ScalarFn ScalarFn::scaled(const Complex& c) const {
  ScalarFn r(n_);
  if (c.is_zero()) return r;
  r.real_ = real_ && c.is_real();
  r.truncated_ = truncated_;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(k, v * c);
  return r;
}

ScalarFn ScalarFn::times(const ParamCoeff& c) const {
  return ring_mul(*this, ScalarFn::constant(n_, c));
}

ScalarFn& ScalarFn::operator+=(const ScalarFn& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch in ScalarFn addition");
  real_ = real_ && o.real_;
  truncated_ |= o.truncated_;
  if (o.terms_.empty()) return *this;
  if (&o == this) return *this = scaled(Complex(2));
  std::vector<MonoTerm> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Complex s = a->second + b->second;
      if (!s.is_zero()) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ScalarFn& ScalarFn::operator-=(const ScalarFn& o) { return *this += o.scaled(Complex(-1)); }

ScalarFn ring_mul(const ScalarFn& f, const ScalarFn& g) {
  if (f.n_ != g.n_) throw std::invalid_argument("dimension mismatch in ScalarFn product");
  ScalarFn r(f.n_);
  r.real_ = f.real_ && g.real_;
  r.truncated_ = f.truncated_ || g.truncated_;
  if (f.is_zero() || g.is_zero()) return r;
  check_frequency_range(f.max_abs_frequency(), g.max_abs_frequency());
  r.truncated_ |= convolve_into(f.terms_, g.terms_, r.terms_);
  canonicalize_terms(r.terms_);
  return r;
}

std::string ScalarFn::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int q = 0; q < kNumParams; ++q) {
      int d = k.param(Param(q));
      if (d == 0) continue;
      os << "*" << param_name(Param(q));
      if (d > 1) os << "^" << d;
    }
    if (!k.is_constant_frequency()) {
      os << "*e^{i(";
      for (int j = 0; j < dim(); ++j) os << (j ? "," : "") << k.freq(j);
      os << ")x}";
    }
  }
  return os.str();
}

std::string TorusIntegral::to_string() const {
  if (value.is_zero()) return "0";
  if (pi_power == 0) return value.to_string();
  return "pi^" + std::to_string(pi_power) + " * " + value.to_string();
}

TorusIntegral integrate_torus(const ScalarFn& f) {
  TorusIntegral r;
  r.pi_power = f.dim();
  r.value = f.mean() * Complex(Rational(std::int64_t(1) << f.dim()));
  return r;
}

ScalarFn partial(const ScalarFn& f, int j) { return f.partial(j); }
ScalarFn param_diff(const ScalarFn& f, Param p) { return f.param_diff(p); }
ScalarFn param_integrate(const ScalarFn& f, Param p) { return f.param_integrate(p); }
ScalarFn param_integrate(const ScalarFn& f, Param p, const Rational& from, const Rational& to) {
  return f.param_integrate(p, from, to);
}

} // namespace fedosov
