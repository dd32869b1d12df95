// Copyright 2026 The Qihyp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QIHYP_RNG_HPP
#define QIHYP_RNG_HPP

#include <array>
#include <cstdint>

namespace qihyp {

/// Derives an independent stream seed from (seed, stream) by one splitmix64
/// step. Used to fan a single report seed out to per-row generators so that
/// rows can be computed in any order (or concurrently) with identical output.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// xoshiro256++ seeded through splitmix64. All randomness in the library
/// flows through this generator so that a (config, seed) pair reproduces
/// reports byte for byte on a given platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace qihyp

#endif  // QIHYP_RNG_HPP
