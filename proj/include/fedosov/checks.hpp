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

#ifndef FEDOSOV_CHECKS_HPP
#define FEDOSOV_CHECKS_HPP

// Independent reference computations used by the test suites and by the CLI
// verification battery. Nothing here calls into the Fedosov pipeline.

#include <cstdint>
#include <random>
#include <vector>

#include "fedosov/geometry.hpp"
#include "fedosov/weyl.hpp"

namespace fedosov::checks {

/// y-polynomial ∘-product from the closed multinomial form
/// Σ_m Π_i (ν/2 · Λ^{i,i'})^{m_i} / m_i! ∂_y^m a ∂_z^{m'} b.
WeylElement moyal_weyl_oracle(const WeylElement& a, const WeylElement& b);

/// Moyal star product of functions on the torus through ν^order.
FormalFunction moyal_star_oracle(const FormalFunction& F, const FormalFunction& G, int order);

/// Random real-valued trigonometric polynomial with frequencies in
/// [-max_freq, max_freq] and small nonzero rational coefficients. The first
/// mode has nonzero frequency whenever max_freq > 0.
ScalarFn random_real_function(std::mt19937_64& rng, int n, int max_freq, int terms);

/// Random real totally symmetric field; `terms` Fourier modes per component
/// (max_freq = 0 gives a constant field).
S3Field random_s3(std::mt19937_64& rng, int n, int max_freq, int terms);

/// Coordinate Lie derivative of Christoffel symbols,
/// ∂_i∂_jX^k + X^p∂_pΓ^k_{ij} − Γ^p_{ij}∂_pX^k + Γ^k_{pj}∂_iX^p + Γ^k_{ip}∂_jX^p,
/// lowered with ω.
Tensor3 lie_derivative_christoffel_oracle(const ScalarFn& H, const SymplecticConnection& c);

} // namespace fedosov::checks

#endif // FEDOSOV_CHECKS_HPP
