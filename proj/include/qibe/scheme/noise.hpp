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

#include "qibe/lattice/params.hpp"
#include "qibe/lattice/rng.hpp"

namespace qibe {

struct NoiseMarginStats {
  std::size_t trials = 0;
  std::size_t samples = 0;  // trials·n coordinates
  std::int64_t max = 0;
  std::int64_t p999 = 0;      // 99.9th percentile (nearest rank)
  std::int64_t threshold = 0;  // floor(q/8)
  bool accepted = false;       // max < threshold
};

/// Monte Carlo over fresh key-first keys R and encryption noise (e0, e) of
/// the decryption noise |e0_i - <r^i, e>|. trials must be >= 1000.
NoiseMarginStats noise_margin_estimate(const SchemeParams& params, std::size_t trials, Rng& rng);

}  // namespace qibe
