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

#include "qibe/scheme/noise.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "qibe/lattice/gaussian.hpp"

namespace qibe {

NoiseMarginStats noise_margin_estimate(const SchemeParams& params, std::size_t trials, Rng& rng) {
  if (trials < 1000) throw std::invalid_argument("noise_margin_estimate: need at least 1000 trials");
  std::vector<std::int64_t> samples;
  samples.reserve(trials * params.n);
  for (std::size_t t = 0; t < trials; ++t) {
    // A does not enter the decryption noise, so only R, e0 and e are drawn.
    std::vector<IntVector> r(params.n);
    for (auto& col : r) col = sample_dgauss_vec(params.m, params.sigma, rng);
    const IntVector e0 = sample_dgauss_vec(params.n, params.sigma, rng);
    const IntVector e = sample_dgauss_vec(params.m, params.sigma, rng);
    for (std::size_t i = 0; i < params.n; ++i) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < params.m; ++k) dot += r[i][k] * e[k];
      samples.push_back(std::llabs(e0[i] - dot));
    }
  }
  std::sort(samples.begin(), samples.end());
  NoiseMarginStats out;
  out.trials = trials;
  out.samples = samples.size();
  out.max = samples.back();
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>((999 * samples.size() + 999) / 1000);
  out.p999 = samples[std::max<std::size_t>(rank, 1) - 1];
  out.threshold = params.q / 8;
  out.accepted = out.max < out.threshold;
  return out;
}

}  // namespace qibe
