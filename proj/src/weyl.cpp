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

#include "fedosov/weyl.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fedosov {

// ---------------------------------------------------------------------------
// WeylKey

WeylKey::WeylKey(int nu, const YExponents& y, unsigned dx_mask) {
  int ydeg = 0;
  std::uint64_t b = dx_mask & 0xf;
  for (int i = 0; i < kMaxTorusDim; ++i) {
    if (y[i] < 0 || y[i] > 255) throw std::out_of_range("y exponent out of range");
    ydeg += y[i];
    b |= std::uint64_t(y[i]) << (4 + 8 * i);
  }
  if (nu < -kNuBias || nu > 127) throw std::out_of_range("nu power out of range");
  int total = 2 * nu + ydeg;
  if (total < 0) throw std::domain_error("negative total degree in Weyl monomial");
  if (total > 255) throw std::out_of_range("total degree out of range");
  b |= std::uint64_t(nu + kNuBias) << 36;
  b |= std::uint64_t(total) << 48;
  bits_ = b;
}

YExponents WeylKey::y_exponents() const {
  YExponents e{};
  for (int i = 0; i < kMaxTorusDim; ++i) e[i] = y(i);
  return e;
}

std::string WeylKey::to_string(int n) const {
  std::ostringstream os;
  bool any = false;
  auto sep = [&] {
    if (any) os << "*";
    any = true;
  };
  if (nu() != 0) {
    sep();
    os << "nu";
    if (nu() != 1) os << "^" << nu();
  }
  for (int i = 0; i < 2 * n; ++i) {
    if (y(i) == 0) continue;
    sep();
    os << "y" << (i + 1);
    if (y(i) > 1) os << "^" << y(i);
  }
  if (dx_mask()) {
    sep();
    bool first = true;
    for (int i = 0; i < 2 * n; ++i) {
      if (!(dx_mask() >> i & 1)) continue;
      if (!first) os << "^";
      first = false;
      os << "dx" << (i + 1);
    }
  }
  if (!any) os << "1";
  return os.str();
}

int wedge_sign(int k, unsigned mask) {
  if (mask >> k & 1) return 0;
  return (__builtin_popcount(mask & ((1u << k) - 1)) & 1) ? -1 : 1;
}

int wedge_sign(unsigned left, unsigned right) {
  if (left & right) return 0;
  int inversions = 0;
  for (int j = 0; j < kMaxTorusDim; ++j)
    if (right >> j & 1) inversions += __builtin_popcount(left >> (j + 1));
  return (inversions & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------
// FormalFunction

FormalFunction FormalFunction::from_scalar(const ScalarFn& f, int order) {
  FormalFunction r(f.n(), order);
  r.coeffs_[0] = f;
  return r;
}

bool FormalFunction::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

int FormalFunction::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return int(k);
  return -1;
}

FormalFunction FormalFunction::truncated(int order) const {
  FormalFunction r(n_, order);
  for (int k = 0; k <= std::min(order, this->order()); ++k) r.coeffs_[k] = coeffs_[k];
  return r;
}

namespace {
template <class F>
FormalFunction map_ff(const FormalFunction& a, F&& fn) {
  FormalFunction r(a.n(), a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = fn(a[k]);
  return r;
}
} // namespace

FormalFunction FormalFunction::param_diff(Param p) const {
  return map_ff(*this, [&](const ScalarFn& f) { return f.param_diff(p); });
}
FormalFunction FormalFunction::param_evaluate(Param p, const Rational& v) const {
  return map_ff(*this, [&](const ScalarFn& f) { return f.param_evaluate(p, v); });
}
FormalFunction FormalFunction::param_integrate(Param p) const {
  return map_ff(*this, [&](const ScalarFn& f) { return f.param_integrate(p); });
}
FormalFunction FormalFunction::scaled(const Complex& c) const {
  return map_ff(*this, [&](const ScalarFn& f) { return f.scaled(c); });
}

FormalFunction FormalFunction::nu_shifted(int shift) const {
  FormalFunction r(n_, order());
  for (int k = 0; k <= order(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    int j = k + shift;
    if (j < 0) throw std::domain_error("negative nu power in formal function");
    if (j <= order()) r.coeffs_[j] = coeffs_[k];
  }
  return r;
}

FormalFunction& FormalFunction::operator+=(const FormalFunction& o) {
  if (coeffs_.empty()) {
    *this = o;
    return *this;
  }
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch in formal function");
  if (o.order() > order()) coeffs_.resize(o.coeffs_.size(), ScalarFn(n_));
  for (int k = 0; k <= o.order(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

FormalFunction& FormalFunction::operator-=(const FormalFunction& o) { return *this += -o; }

bool operator==(const FormalFunction& a, const FormalFunction& b) {
  int m = std::max(a.order(), b.order());
  for (int k = 0; k <= m; ++k) {
    bool az = k > a.order() || a[k].is_zero();
    bool bz = k > b.order() || b[k].is_zero();
    if (az && bz) continue;
    if (az != bz || a[k] != b[k]) return false;
  }
  return true;
}

std::string FormalFunction::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (int k = 0; k <= order(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (any) os << " + ";
    any = true;
    os << "nu^" << k << " * [" << coeffs_[k].to_string() << "]";
  }
  if (!any) return "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Moyal table

namespace {

struct MoyalOut {
  int j; // number of contractions (ν power added)
  YExponents gamma;
  Rational coeff;
};

std::uint64_t pack_y(const YExponents& a) {
  std::uint64_t b = 0;
  for (int i = 0; i < kMaxTorusDim; ++i) b |= std::uint64_t(a[i]) << (8 * i);
  return b;
}

// y^α ∘ y^β = Σ_j (ν/2)^j / j! · (Λ^{ik} ∂_{y^i} ⊗ ∂_{z^k})^j y^α z^β |_{z=y}
std::vector<MoyalOut> compute_moyal(int n, const YExponents& alpha, const YExponents& beta) {
  SymplecticData sd{n};
  std::vector<MoyalOut> out;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> cur;
  cur[{pack_y(alpha), pack_y(beta)}] = Rational(1);
  Rational scale(1);
  for (int j = 0;; ++j) {
    if (cur.empty()) break;
    if (j > 0) scale = scale * Rational(1, 2 * j);
    std::map<std::uint64_t, Rational> collected;
    for (const auto& [ab, c] : cur) {
      YExponents a{}, b{};
      for (int i = 0; i < kMaxTorusDim; ++i) {
        a[i] = int((ab.first >> (8 * i)) & 0xff);
        b[i] = int((ab.second >> (8 * i)) & 0xff);
      }
      YExponents g{};
      for (int i = 0; i < kMaxTorusDim; ++i) g[i] = a[i] + b[i];
      collected[pack_y(g)] += c;
    }
    for (const auto& [g, c] : collected) {
      if (c.is_zero()) continue;
      YExponents ge{};
      for (int i = 0; i < kMaxTorusDim; ++i) ge[i] = int((g >> (8 * i)) & 0xff);
      out.push_back({j, ge, c * scale});
    }
    std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> next;
    for (const auto& [ab, c] : cur) {
      YExponents a{}, b{};
      for (int i = 0; i < kMaxTorusDim; ++i) {
        a[i] = int((ab.first >> (8 * i)) & 0xff);
        b[i] = int((ab.second >> (8 * i)) & 0xff);
      }
      for (int i = 0; i < 2 * n; ++i) {
        if (a[i] == 0) continue;
        int k = sd.partner(i);
        if (b[k] == 0) continue;
        Rational w = c * Rational(std::int64_t(sd.lambda(i, k)) * a[i] * b[k]);
        YExponents a2 = a, b2 = b;
        --a2[i];
        --b2[k];
        next[{pack_y(a2), pack_y(b2)}] += w;
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.is_zero())
        it = next.erase(it);
      else
        ++it;
    }
    cur = std::move(next);
  }
  return out;
}

const std::vector<MoyalOut>& moyal_table(int n, const YExponents& alpha, const YExponents& beta) {
  thread_local std::unordered_map<std::uint64_t, std::vector<MoyalOut>> cache[3];
  std::uint64_t key = pack_y(alpha) | (pack_y(beta) << 32);
  auto& m = cache[n];
  auto it = m.find(key);
  if (it != m.end()) return it->second;
  return m.emplace(key, compute_moyal(n, alpha, beta)).first->second;
}

void check_compatible(const WeylElement& a, const WeylElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Weyl elements over different tori");
  if (a.order() != b.order()) throw std::invalid_argument("mismatched truncation orders");
}

int max_frequency(const WeylElement& a) {
  int m = 0;
  for (const auto& r : a.runs())
    for (const auto& [k, c] : a.run_terms(r))
      for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(k.freq(j)));
  return m;
}

enum class ProductMode { full, commutator, commutator_over_nu };

struct Window {
  int lo = 0;
  int hi = 1 << 20;
  bool symbol_only = false;
};

WeylElement product(const WeylElement& a, const WeylElement& b, ProductMode mode,
                    Window win = {}) {
  check_compatible(a, b);
  const int N = a.order();
  const bool ext = a.extended() || b.extended();
  const int shift = mode == ProductMode::commutator_over_nu ? 1 : 0;
  if (a.is_zero() || b.is_zero()) return WeylElement(a.n(), N, ext);
  check_frequency_range(max_frequency(a), max_frequency(b));

  std::vector<WeylElement::Entry> soup;
  std::vector<MonoTerm> conv;
  bool trunc = a.truncated() || b.truncated();
  const auto& bruns = b.runs();
  const int hi = std::min(N, win.hi);
  for (const auto& ra : a.runs()) {
    const int d1 = ra.key.total_degree();
    if (win.symbol_only && ra.key.dx_mask() != 0) continue;
    for (const auto& rb : bruns) {
      const int d2 = rb.key.total_degree();
      if (d1 + d2 - 2 * shift > hi) break; // runs are degree-sorted
      if (d1 + d2 - 2 * shift < win.lo) continue;
      if (win.symbol_only) {
        if (rb.key.dx_mask() != 0 || rb.key.y_degree() != ra.key.y_degree()) continue;
        bool matched = true;
        for (int i = 0; i < a.dim(); ++i)
          if (ra.key.y(i) != rb.key.y(SymplecticData{a.n()}.partner(i))) matched = false;
        if (!matched) continue;
      }
      int sign = wedge_sign(ra.key.dx_mask(), rb.key.dx_mask());
      if (sign == 0) continue;
      const auto& table = moyal_table(a.n(), ra.key.y_exponents(), rb.key.y_exponents());
      bool any = false;
      auto wanted = [&](const MoyalOut& mo) {
        if (mode != ProductMode::full && !(mo.j & 1)) return false;
        if (win.symbol_only && mo.j != ra.key.y_degree()) return false;
        return true;
      };
      for (const auto& mo : table)
        if (wanted(mo)) any = true;
      if (!any) continue;
      conv.clear();
      trunc |= convolve_into(a.run_terms(ra), b.run_terms(rb), conv);
      if (conv.empty()) continue;
      unsigned mask = ra.key.dx_mask() | rb.key.dx_mask();
      for (const auto& mo : table) {
        if (!wanted(mo)) continue;
        Rational w = mo.coeff;
        if (mode != ProductMode::full) w = w * Rational(2);
        if (sign < 0) w = -w;
        int nu = ra.key.nu() + rb.key.nu() + mo.j - shift;
        WeylKey key(nu, mo.gamma, mask);
        for (const auto& [mk, c] : conv) soup.push_back({key.bits(), mk, c * w});
      }
    }
  }
  return WeylElement::from_entries(a.n(), N, ext, std::move(soup), trunc);
}

} // namespace

WeylElement circ(const WeylElement& a, const WeylElement& b) {
  return product(a, b, ProductMode::full);
}

WeylElement graded_commutator(const WeylElement& a, const WeylElement& b) {
  return product(a, b, ProductMode::commutator);
}

WeylElement commutator_over_nu(const WeylElement& a, const WeylElement& b) {
  return product(a, b, ProductMode::commutator_over_nu);
}

WeylElement circ(const WeylElement& a, const WeylElement& b, int lo, int hi) {
  return product(a, b, ProductMode::full, {lo, hi, false});
}

WeylElement commutator_over_nu(const WeylElement& a, const WeylElement& b, int lo, int hi) {
  return product(a, b, ProductMode::commutator_over_nu, {lo, hi, false});
}

FormalFunction circ_symbol(const WeylElement& a, const WeylElement& b) {
  return product(a, b, ProductMode::full, {0, 1 << 20, true}).symbol();
}

FormalFunction commutator_over_nu_symbol(const WeylElement& a, const WeylElement& b) {
  return product(a, b, ProductMode::commutator_over_nu, {0, 1 << 20, true}).symbol();
}

namespace {

// Σ_k f_k g_{-k}, the mean of the pointwise product.
ParamCoeff mean_of_product(std::span<const MonoTerm> f, std::span<const MonoTerm> g) {
  bool plain = true;
  for (const auto& [k, c] : f) plain = plain && !k.has_params();
  for (const auto& [k, c] : g) plain = plain && !k.has_params();
  if (plain) {
    Complex acc;
    for (const auto& [k, c] : f) {
      MonoKey mk = k.negated_frequency();
      auto it = std::lower_bound(g.begin(), g.end(), mk,
                                 [](const MonoTerm& t, MonoKey key) { return t.first < key; });
      if (it != g.end() && it->first == mk) acc += c * it->second;
    }
    return ParamCoeff(acc);
  }
  std::vector<MonoTerm> conv;
  convolve_into(f, g, conv);
  ParamCoeff out;
  for (const auto& [k, c] : conv)
    if (k.without_params() == MonoKey()) out += ParamCoeff::monomial(c, k.params());
  return out;
}

} // namespace

std::vector<ParamCoeff> commutator_over_nu_symbol_mean(const WeylElement& a,
                                                       const WeylElement& b) {
  check_compatible(a, b);
  const int N = a.order();
  std::vector<ParamCoeff> out(N / 2 + 1);
  if (a.is_zero() || b.is_zero()) return out;
  SymplecticData sd{a.n()};
  for (const auto& ra : a.runs()) {
    if (ra.key.dx_mask() != 0) continue;
    const int d1 = ra.key.total_degree();
    for (const auto& rb : b.runs()) {
      const int d2 = rb.key.total_degree();
      if (d1 + d2 - 2 > N) break;
      if (rb.key.dx_mask() != 0 || rb.key.y_degree() != ra.key.y_degree()) continue;
      const int j = ra.key.y_degree();
      if (!(j & 1)) continue;
      bool matched = true;
      for (int i = 0; i < a.dim(); ++i)
        if (ra.key.y(i) != rb.key.y(sd.partner(i))) matched = false;
      if (!matched) continue;
      Rational w;
      for (const auto& mo : moyal_table(a.n(), ra.key.y_exponents(), rb.key.y_exponents()))
        if (mo.j == j) w += mo.coeff;
      if (w.is_zero()) continue;
      ParamCoeff m = mean_of_product(a.run_terms(ra), b.run_terms(rb));
      if (m.is_zero()) continue;
      out[ra.key.nu() + rb.key.nu() + j - 1] += m * Complex(w * Rational(2));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// WeylElement

WeylElement WeylElement::from_entries(int n, int order, bool extended, std::vector<Entry> soup,
                                      bool truncated) {
  WeylElement r(n, order, extended);
  r.truncated_ = truncated;
  std::sort(soup.begin(), soup.end(), [](const Entry& x, const Entry& y) {
    return x.key != y.key ? x.key < y.key : x.mono < y.mono;
  });
  for (std::size_t i = 0; i < soup.size();) {
    std::size_t j = i + 1;
    Complex acc = std::move(soup[i].coeff);
    while (j < soup.size() && soup[j].key == soup[i].key && soup[j].mono == soup[i].mono)
      acc += soup[j++].coeff;
    if (!acc.is_zero()) {
      WeylKey key = WeylKey::from_bits(soup[i].key);
      if (key.total_degree() <= order) {
        if (!extended && key.nu() < 0)
          throw std::domain_error("negative nu power outside the extended algebra");
        if (r.runs_.empty() || r.runs_.back().key != key) {
          auto pos = std::uint32_t(r.terms_.size());
          r.runs_.push_back({key, pos, pos});
        }
        r.terms_.emplace_back(soup[i].mono, std::move(acc));
        r.runs_.back().end = std::uint32_t(r.terms_.size());
      }
    }
    i = j;
  }
  return r;
}

WeylElement WeylElement::from_scalar(int n, int order, const ScalarFn& f) {
  return monomial(n, order, WeylKey(), f);
}

WeylElement WeylElement::monomial(int n, int order, WeylKey key, const ScalarFn& f, bool extended) {
  if (f.n() != n) throw std::invalid_argument("coefficient over a different torus");
  std::vector<Entry> soup;
  for (const auto& [mk, c] : f.terms()) soup.push_back({key.bits(), mk, c});
  return from_entries(n, order, extended, std::move(soup), f.truncated());
}

WeylElement WeylElement::y(int n, int order, int i) {
  YExponents e{};
  e.at(std::size_t(i)) = 1;
  return monomial(n, order, WeylKey(0, e, 0), ScalarFn::constant(n, Complex(1)));
}

WeylElement WeylElement::nu(int n, int order, int power) {
  return monomial(n, order, WeylKey(power, YExponents{}, 0), ScalarFn::constant(n, Complex(1)),
                  power < 0);
}

ScalarFn WeylElement::coefficient(WeylKey k) const {
  auto it = std::lower_bound(runs_.begin(), runs_.end(), k,
                             [](const Run& r, WeylKey key) { return r.key < key; });
  if (it == runs_.end() || it->key != k) return ScalarFn(n_);
  auto span = run_terms(*it);
  return ScalarFn::from_terms(n_, std::vector<MonoTerm>(span.begin(), span.end()));
}

int WeylElement::min_degree() const { return runs_.empty() ? -1 : runs_.front().key.total_degree(); }
int WeylElement::max_degree() const { return runs_.empty() ? -1 : runs_.back().key.total_degree(); }

namespace {
template <class Pred>
WeylElement filter_runs(const WeylElement& a, int order, Pred&& keep) {
  std::vector<WeylElement::Entry> soup;
  for (const auto& r : a.runs()) {
    if (!keep(r.key)) continue;
    for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({r.key.bits(), mk, c});
  }
  return WeylElement::from_entries(a.n(), order, a.extended(), std::move(soup), a.truncated());
}
} // namespace

WeylElement WeylElement::degree_range(int lo, int hi) const {
  return filter_runs(*this, order_, [&](WeylKey k) {
    return k.total_degree() >= lo && k.total_degree() <= hi;
  });
}

WeylElement WeylElement::form_part(int q) const {
  return filter_runs(*this, order_, [&](WeylKey k) { return k.form_degree() == q; });
}

WeylElement WeylElement::with_order(int order) const {
  return filter_runs(*this, order, [&](WeylKey k) { return k.total_degree() <= order; });
}

WeylElement WeylElement::as_extended() const {
  WeylElement r = *this;
  r.extended_ = true;
  return r;
}

FormalFunction WeylElement::symbol() const {
  FormalFunction f(n_, order_ / 2);
  for (const auto& r : runs_) {
    if (r.key.y_degree() != 0 || r.key.dx_mask() != 0) continue;
    auto span = run_terms(r);
    f[r.key.nu()] = ScalarFn::from_terms(n_, std::vector<MonoTerm>(span.begin(), span.end()));
  }
  return f;
}

WeylElement WeylElement::scaled(const Complex& c) const {
  if (c.is_zero()) return WeylElement(n_, order_, extended_);
  WeylElement r = *this;
  for (auto& [mk, v] : r.terms_) v = v * c;
  return r;
}

WeylElement WeylElement::times_function(const ScalarFn& f) const {
  if (f.n() != n_) throw std::invalid_argument("coefficient over a different torus");
  std::vector<Entry> soup;
  std::vector<MonoTerm> conv;
  bool trunc = truncated_ || f.truncated();
  if (!is_zero() && !f.is_zero()) check_frequency_range(max_frequency(*this), f.max_abs_frequency());
  for (const auto& r : runs_) {
    conv.clear();
    trunc |= convolve_into(run_terms(r), f.terms(), conv);
    for (auto& [mk, c] : conv) soup.push_back({r.key.bits(), mk, std::move(c)});
  }
  return from_entries(n_, order_, extended_, std::move(soup), trunc);
}

WeylElement WeylElement::nu_shifted(int k) const {
  std::vector<Entry> soup;
  bool ext = extended_;
  for (const auto& r : runs_) {
    int nu = r.key.nu() + k;
    if (nu < 0) ext = true;
    WeylKey key(nu, r.key.y_exponents(), r.key.dx_mask());
    for (const auto& [mk, c] : run_terms(r)) soup.push_back({key.bits(), mk, c});
  }
  if (ext && !extended_) throw std::domain_error("negative nu power outside the extended algebra");
  return from_entries(n_, order_, ext, std::move(soup), truncated_);
}

namespace {
void merge_terms(std::span<const MonoTerm> a, std::span<const MonoTerm> b, bool negate_b,
                 std::vector<MonoTerm>& out) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
      ++j;
    } else {
      Complex s = negate_b ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
}

} // namespace

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_compatible(*this, o);
  if (o.is_zero()) {
    truncated_ |= o.truncated_;
    return *this;
  }
  std::vector<Run> runs;
  std::vector<MonoTerm> terms;
  terms.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  std::vector<MonoTerm> tmp;
  auto push_run = [&](WeylKey key, std::span<const MonoTerm> a, std::span<const MonoTerm> b) {
    auto begin = std::uint32_t(terms.size());
    merge_terms(a, b, false, terms);
    if (terms.size() > begin) runs.push_back({key, begin, std::uint32_t(terms.size())});
  };
  while (i < runs_.size() || j < o.runs_.size()) {
    if (j == o.runs_.size() || (i < runs_.size() && runs_[i].key < o.runs_[j].key)) {
      push_run(runs_[i].key, run_terms(runs_[i]), {});
      ++i;
    } else if (i == runs_.size() || o.runs_[j].key < runs_[i].key) {
      push_run(o.runs_[j].key, {}, o.run_terms(o.runs_[j]));
      ++j;
    } else {
      push_run(runs_[i].key, run_terms(runs_[i]), o.run_terms(o.runs_[j]));
      ++i;
      ++j;
    }
  }
  runs_ = std::move(runs);
  terms_ = std::move(terms);
  extended_ |= o.extended_;
  truncated_ |= o.truncated_;
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) { return *this += -o; }

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.n_ != b.n_ || a.runs_.size() != b.runs_.size() || a.terms_ != b.terms_) return false;
  for (std::size_t i = 0; i < a.runs_.size(); ++i)
    if (a.runs_[i].key != b.runs_[i].key || a.runs_[i].begin != b.runs_[i].begin) return false;
  return true;
}

WeylElement WeylElement::map_coefficients(
    const std::function<ScalarFn(WeylKey, const ScalarFn&)>& fn) const {
  std::vector<Entry> soup;
  bool trunc = truncated_;
  for (const auto& r : runs_) {
    auto span = run_terms(r);
    ScalarFn in = ScalarFn::from_terms(n_, std::vector<MonoTerm>(span.begin(), span.end()));
    ScalarFn out = fn(r.key, in);
    trunc |= out.truncated();
    for (const auto& [mk, c] : out.terms()) soup.push_back({r.key.bits(), mk, c});
  }
  return from_entries(n_, order_, extended_, std::move(soup), trunc);
}

WeylElement WeylElement::param_diff(Param p) const {
  return map_coefficients([&](WeylKey, const ScalarFn& f) { return f.param_diff(p); });
}
WeylElement WeylElement::param_integrate(Param p) const {
  return map_coefficients([&](WeylKey, const ScalarFn& f) { return f.param_integrate(p); });
}
WeylElement WeylElement::param_evaluate(Param p, const Rational& v) const {
  return map_coefficients([&](WeylKey, const ScalarFn& f) { return f.param_evaluate(p, v); });
}
WeylElement WeylElement::param_coefficient(Param p, int degree) const {
  return map_coefficients([&](WeylKey, const ScalarFn& f) { return f.param_coefficient(p, degree); });
}

int WeylElement::param_degree(Param p) const {
  int d = 0;
  for (const auto& [mk, c] : terms_) d = std::max(d, mk.param(p));
  return d;
}

std::string WeylElement::to_string() const {
  if (runs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& r : runs_) {
    if (!first) os << "\n";
    first = false;
    auto span = run_terms(r);
    ScalarFn f = ScalarFn::from_terms(n_, std::vector<MonoTerm>(span.begin(), span.end()));
    os << r.key.to_string(n_) << " : " << f.to_string();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// δ, δ⁻¹, d, ι

WeylElement delta(const WeylElement& a) {
  std::vector<WeylElement::Entry> soup;
  for (const auto& r : a.runs()) {
    YExponents y = r.key.y_exponents();
    unsigned mask = r.key.dx_mask();
    for (int k = 0; k < a.dim(); ++k) {
      if (y[k] == 0) continue;
      int sign = wedge_sign(k, mask);
      if (sign == 0) continue;
      YExponents y2 = y;
      --y2[k];
      WeylKey key(r.key.nu(), y2, mask | (1u << k));
      Rational w(std::int64_t(sign) * y[k]);
      for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({key.bits(), mk, c * w});
    }
  }
  return WeylElement::from_entries(a.n(), a.order(), a.extended(), std::move(soup), a.truncated());
}

WeylElement delta_inv(const WeylElement& a) {
  std::vector<WeylElement::Entry> soup;
  for (const auto& r : a.runs()) {
    int p = r.key.y_degree(), q = r.key.form_degree();
    if (q == 0) continue; // ι kills 0-forms; (0,0) maps to 0 by definition
    YExponents y = r.key.y_exponents();
    unsigned mask = r.key.dx_mask();
    for (int k = 0; k < a.dim(); ++k) {
      if (!(mask >> k & 1)) continue;
      unsigned rest = mask & ~(1u << k);
      int sign = wedge_sign(k, rest);
      YExponents y2 = y;
      ++y2[k];
      WeylKey key(r.key.nu(), y2, rest);
      Rational w(sign, p + q);
      for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({key.bits(), mk, c * w});
    }
  }
  return WeylElement::from_entries(a.n(), a.order(), a.extended(), std::move(soup), a.truncated());
}

WeylElement exterior_d(const WeylElement& a) {
  std::vector<WeylElement::Entry> soup;
  for (const auto& r : a.runs()) {
    unsigned mask = r.key.dx_mask();
    for (int j = 0; j < a.dim(); ++j) {
      int sign = wedge_sign(j, mask);
      if (sign == 0) continue;
      WeylKey key(r.key.nu(), r.key.y_exponents(), mask | (1u << j));
      for (const auto& [mk, c] : a.run_terms(r)) {
        int kj = mk.freq(j);
        if (kj == 0) continue;
        Rational w(std::int64_t(sign) * kj);
        // i·k_j·(re + im·i)
        soup.push_back({key.bits(), mk, Complex(-c.im * w, c.re * w)});
      }
    }
  }
  return WeylElement::from_entries(a.n(), a.order(), a.extended(), std::move(soup), a.truncated());
}

WeylElement interior(const std::vector<ScalarFn>& X, const WeylElement& a) {
  if (int(X.size()) != a.dim()) throw std::invalid_argument("vector field has wrong dimension");
  WeylElement out(a.n(), a.order(), a.extended());
  for (int k = 0; k < a.dim(); ++k) {
    if (X[k].is_zero()) continue;
    std::vector<WeylElement::Entry> soup;
    for (const auto& r : a.runs()) {
      unsigned mask = r.key.dx_mask();
      if (!(mask >> k & 1)) continue;
      unsigned rest = mask & ~(1u << k);
      int sign = wedge_sign(k, rest);
      WeylKey key(r.key.nu(), r.key.y_exponents(), rest);
      for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({key.bits(), mk, c * Rational(sign)});
    }
    out += WeylElement::from_entries(a.n(), a.order(), a.extended(), std::move(soup), a.truncated())
               .times_function(X[k]);
  }
  return out;
}

WeylElement wedge_one_form(const std::vector<ScalarFn>& f, const WeylElement& a) {
  if (int(f.size()) != a.dim()) throw std::invalid_argument("one-form has wrong dimension");
  WeylElement out(a.n(), a.order(), a.extended());
  for (int k = 0; k < a.dim(); ++k) {
    if (f[k].is_zero()) continue;
    std::vector<WeylElement::Entry> soup;
    for (const auto& r : a.runs()) {
      unsigned mask = r.key.dx_mask();
      int sign = wedge_sign(k, mask);
      if (sign == 0) continue;
      WeylKey key(r.key.nu(), r.key.y_exponents(), mask | (1u << k));
      for (const auto& [mk, c] : a.run_terms(r)) soup.push_back({key.bits(), mk, c * Rational(sign)});
    }
    out += WeylElement::from_entries(a.n(), a.order(), a.extended(), std::move(soup), a.truncated())
               .times_function(f[k]);
  }
  return out;
}

WeylElement truncate(const WeylElement& a, int order) {
  if (order > a.order()) throw std::invalid_argument("truncate cannot raise the order");
  return a.with_order(order);
}

FormalFunction symbol(const WeylElement& a) { return a.symbol(); }

} // namespace fedosov
