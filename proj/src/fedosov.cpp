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

#include "fedosov/fedosov.hpp"

namespace fedosov {

WeylElement partial_op(const WeylElement& gamma_bar, const WeylElement& a) {
  WeylElement out = exterior_d(a);
  if (!gamma_bar.is_zero()) out += commutator_over_nu(gamma_bar.with_order(a.order()), a);
  return out;
}

FedosovContext FedosovContext::solve(const SymplecticConnection& c, int order) {
  if (order < 3) throw std::invalid_argument("truncation order must be at least 3");
  FedosovContext ctx(c, order);
  ctx.gamma_bar_ = gammabar(c, order);
  ctx.r_bar_ = rbar(c, order);
  // Component of degree d only depends on components of degree < d.
  WeylElement r(c.n(), order);
  for (int d = 3; d <= order; ++d) {
    WeylElement rhs = ctx.partial(r.degree_part(d - 1));
    if (d == 3) rhs += ctx.r_bar_;
    if (!r.is_zero())
      rhs += commutator_over_nu(r, r, d - 1, d - 1).scaled(Complex(Rational(1, 2)));
    r += delta_inv(rhs);
  }
  ctx.r_ = std::move(r);
  return ctx;
}

FedosovContext FedosovContext::at_zero(Param p) const {
  FedosovContext out(SymplecticConnection(c_.u().param_evaluate(p, Rational(0))), order_);
  out.r_ = r_.param_evaluate(p, Rational(0));
  out.gamma_bar_ = gamma_bar_.param_evaluate(p, Rational(0));
  out.r_bar_ = r_bar_.param_evaluate(p, Rational(0));
  return out;
}

WeylElement FedosovContext::D(const WeylElement& a) const {
  WeylElement out = partial(a) - delta(a);
  if (!r_.is_zero()) out += commutator_over_nu(r_, a);
  return out;
}

WeylElement FedosovContext::r_equation_residual() const {
  // (1/ν) r∘r = ½ (1/ν)[r, r] for a 1-form r.
  return r_bar_ + partial(r_) - delta(r_) +
         commutator_over_nu(r_, r_).scaled(Complex(Rational(1, 2)));
}

WeylElement FedosovContext::fixed_point(const WeylElement& seed) const {
  WeylElement a = seed;
  for (int d = 1; d <= order_; ++d) {
    WeylElement step = partial(a.degree_part(d - 1));
    if (!r_.is_zero()) step += commutator_over_nu(r_, a, d - 1, d - 1);
    a += delta_inv(step);
  }
  return a;
}

WeylElement FedosovContext::quantize(const FormalFunction& F) const {
  if (F.n() != n()) throw std::invalid_argument("function over a different torus");
  WeylElement seed(n(), order_);
  for (int k = 0; k <= F.order(); ++k) {
    if (F[k].is_zero()) continue;
    if (2 * k > order_) break;
    seed += WeylElement::monomial(n(), order_, WeylKey(k, YExponents{}, 0), F[k]);
  }
  return fixed_point(seed);
}

WeylElement FedosovContext::quantize(const ScalarFn& f) const {
  return quantize(FormalFunction::from_scalar(f, nu_order()));
}

FormalFunction FedosovContext::star(const FormalFunction& F, const FormalFunction& G) const {
  return circ_symbol(quantize(F), quantize(G)).truncated(nu_order());
}

FormalFunction FedosovContext::star(const ScalarFn& f, const ScalarFn& g) const {
  return star(FormalFunction::from_scalar(f, nu_order()), FormalFunction::from_scalar(g, nu_order()));
}

FormalFunction FedosovContext::star_commutator_over_nu(const FormalFunction& F,
                                                       const FormalFunction& G) const {
  return commutator_over_nu_symbol(quantize(F), quantize(G)).truncated(nu_order());
}

WeylElement FedosovContext::d_inverse(const WeylElement& b, int check_degree) const {
  if (check_degree < 0) check_degree = order_ - 2;
  if (b.is_zero()) return WeylElement(n(), order_);
  WeylElement defect = D(b).degree_range(0, check_degree);
  if (!defect.is_zero()) throw FlatnessError("not D-flat");
  return fixed_point(-delta_inv(b));
}

} // namespace fedosov
