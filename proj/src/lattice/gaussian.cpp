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

#include "qibe/lattice/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qibe {

std::int64_t sample_dgauss_centered(double sigma, double center, Rng& rng) {
  if (!(sigma > 0)) throw std::invalid_argument("sample_dgauss: sigma must be > 0");
  const double radius = kTailCut * sigma;
  const auto lo = static_cast<std::int64_t>(std::ceil(center - radius));
  const auto hi = static_cast<std::int64_t>(std::floor(center + radius));
  if (lo > hi) return static_cast<std::int64_t>(std::llround(center));
  const double scale = std::numbers::pi / (sigma * sigma);
  // Weights are taken relative to the best point in the support, so the mode
  // is always accepted. Without this a tiny sigma with a non-integer centre
  // has every acceptance probability underflow to zero.
  const auto best = std::clamp(static_cast<std::int64_t>(std::llround(center)), lo, hi);
  const double d_best = static_cast<double>(best) - center;
  for (;;) {
    const std::int64_t x = rng.uniform_int(lo, hi);
    const double d = static_cast<double>(x) - center;
    if (rng.uniform01() < std::exp(-scale * (d * d - d_best * d_best))) return x;
  }
}

std::int64_t sample_dgauss_int(double sigma, Rng& rng) {
  return sample_dgauss_centered(sigma, 0.0, rng);
}

IntVector sample_dgauss_vec(std::size_t dim, double sigma, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("sample_dgauss_vec: dim must be >= 1");
  IntVector out(dim);
  for (auto& x : out) x = sample_dgauss_int(sigma, rng);
  return out;
}

namespace {

void require_normalized(const Distribution& d) {
  double total = 0;
  for (const auto& [_, p] : d) {
    if (p < 0 || !std::isfinite(p)) throw std::invalid_argument("statistical_distance: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("statistical_distance: distribution not normalized");
}

}  // namespace

double statistical_distance(const Distribution& p, const Distribution& r) {
  require_normalized(p);
  require_normalized(r);
  double sum = 0;
  for (const auto& [x, px] : p) {
    const auto it = r.find(x);
    sum += std::abs(px - (it == r.end() ? 0.0 : it->second));
  }
  for (const auto& [x, rx] : r)
    if (!p.contains(x)) sum += rx;
  return sum / 2;
}

}  // namespace qibe
