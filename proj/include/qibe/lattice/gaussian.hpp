// Copyright 2026 The QIBE Authors
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

#pragma once

#include <cstdint>
#include <map>

#include "qibe/lattice/matrix.hpp"
#include "qibe/lattice/rng.hpp"

namespace qibe {

// Samples are confined to |x - c| <= kTailCut·sigma (tail mass < 2^-100).
inline constexpr double kTailCut = 12.0;

// Discrete Gaussian over Z with weight exp(-pi·x²/sigma²), by rejection from
// the uniform distribution on the truncated support.
std::int64_t sample_dgauss_int(double sigma, Rng& rng);

// Same, centred at a real c: weight exp(-pi·(x-c)²/sigma²).
std::int64_t sample_dgauss_centered(double sigma, double center, Rng& rng);

// `dim` independent draws of sample_dgauss_int. dim must be >= 1.
IntVector sample_dgauss_vec(std::size_t dim, double sigma, Rng& rng);

using Distribution = std::map<std::int64_t, double>;

// Half the L1 distance over the union of supports. Both inputs must be
// nonnegative and sum to 1 within 1e-9, otherwise std::invalid_argument.
double statistical_distance(const Distribution& p, const Distribution& r);

}  // namespace qibe
