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

#ifndef QIHYP_PACKING_HPP
#define QIHYP_PACKING_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qihyp/errors.hpp"

// Closed-form bounds for packings of small disks in a larger disk, in the
// Euclidean and hyperbolic planes, together with a seeded greedy oracle that
// produces maximal packings to check the bounds against.
//
// Conventions: disks of radius r lie inside the ambient disk of radius R, so
// admissible centers lie within R - r of the ambient center; "at least 2s
// apart" means gap between disk boundaries, so centers are >= 2(r + s) apart.
namespace qihyp::packing {

enum class Space { Euclidean, Hyperbolic };

struct PackingConfig {
  Space space = Space::Euclidean;
  double R = 1.0;  // ambient disk radius
  double r = 0.1;  // small-disk radius
  double s = 0.0;  // half the required boundary gap
};

/// Throws ValidationError unless R > r > 0 and s >= 0.
void validate(const PackingConfig& config);

/// Upper bound ((R+s)/(r+s))^2 on the size of ANY admissible Euclidean
/// packing.
double euclid_packing_bound(double R, double r, double s);

/// Lower bound (e^R - 2) / (2 (cosh(2(r+s)) - 1)) on the size of a MAXIMAL
/// hyperbolic packing. Values below 1 are vacuous.
double hyp_packing_bound(double R, double r, double s);

/// The bound matching config.space.
double bound_for(const PackingConfig& config);

/// A packing produced by the greedy oracle. Centers are planar (x, y)
/// coordinates in the Euclidean case and upper-half-plane coordinates in the
/// hyperbolic case (ambient center (0, 1)). `maximal` certifies that
/// reject_samples consecutive uniform candidates all failed after the last
/// acceptance; the residual failure probability is governed by that count.
struct PackingResult {
  PackingConfig config;
  std::uint64_t seed = 0;
  std::vector<std::array<double, 2>> centers;
  bool maximal = false;
  int reject_samples = 0;

  std::size_t count() const { return centers.size(); }
};

inline constexpr int kDefaultRejectSamples = 100000;

/// Greedy maximal packing: candidate centers are drawn uniformly w.r.t. the
/// metric's area measure on the admissible disk of radius R - r and accepted
/// when >= 2(r+s) from every accepted center. Deterministic for a fixed
/// (config, seed). A config admitting no disk (R <= r) yields count 0 with
/// maximal = true.
PackingResult greedy_pack(const PackingConfig& config, std::uint64_t seed,
                          int reject_samples = kDefaultRejectSamples);

/// Rechecks the containment and separation invariants of a result in
/// O(count^2) from the stored centers. Returns the worst slack (negative =
/// violated).
double recheck_invariants(const PackingResult& result);

struct CompareRow {
  double R = 0.0;
  std::size_t euclid_count = 0;
  double euclid_bound = 0.0;
  std::size_t hyp_count = 0;
  double hyp_bound = 0.0;
  double ratio = 0.0;  // hyperbolic count / Euclidean count
};

/// Runs the greedy oracle in both spaces for each ambient radius. Rows are
/// independent; `threads` > 1 fans them out with per-row derived seeds, so
/// the table is identical regardless of thread count.
std::vector<CompareRow> pack_compare(std::span<const double> Rs, double r,
                                     double s, std::uint64_t seed,
                                     int threads = 1);

}  // namespace qihyp::packing

#endif  // QIHYP_PACKING_HPP
