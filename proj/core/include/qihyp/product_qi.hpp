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

#ifndef QIHYP_PRODUCT_QI_HPP
#define QIHYP_PRODUCT_QI_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qihyp/hyp2.hpp"

// The product metric on (hyperbolic plane) x (real line) and the constant
// calculus that controls how quasi-isometries of the product distort the
// horizontal and vertical directions.
namespace qihyp::product_qi {

/// A point of H^2 x R.
struct ProductPoint {
  hyp2::HPoint base;
  double height = 0.0;
};

/// The constants governing a quasi-isometry and the quasiaction built from
/// it: lambda >= 1 and epsilon, delta >= 0 from the two-sided distance
/// bounds, kappa the composition defect, and `a` the scale constant tying
/// vertical-gap bounds to cylinder radius (not pinned by theory; configurable,
/// default 1).
struct QIParams {
  double lambda = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
  double a = 1.0;

  /// Builds params with kappa derived as lambda*delta + epsilon.
  static QIParams derived(double lambda, double epsilon, double delta,
                          double a = 1.0);
};

/// Throws ValidationError unless lambda >= 1, epsilon/delta/kappa >= 0, a > 0.
void validate(const QIParams& p);

/// An empirical map given by finitely many (source, image) pairs.
struct SampledMap {
  std::vector<std::pair<ProductPoint, ProductPoint>> pairs;

  /// Image of the sampled source nearest to `p` within `tol`, if any.
  std::optional<ProductPoint> image_of(const ProductPoint& p, double tol) const;

  /// Samples `fn` on the given sources.
  template <typename Fn>
  static SampledMap from_function(std::span<const ProductPoint> sources,
                                  Fn&& fn) {
    SampledMap m;
    m.pairs.reserve(sources.size());
    for (const ProductPoint& s : sources) m.pairs.emplace_back(s, fn(s));
    return m;
  }
};

/// sqrt(horizontal^2 + vertical^2).
double product_distance(const ProductPoint& p, const ProductPoint& q);

/// Distance between the base projections.
double horizontal_distance(const ProductPoint& p, const ProductPoint& q);

/// Absolute difference of the heights.
double vertical_distance(const ProductPoint& p, const ProductPoint& q);

/// kappa = lambda * delta + epsilon.
double quasiaction_kappa(double lambda, double epsilon, double delta);

/// S = 2 (cosh(2r + lambda(1 + 2 epsilon)) - 1).
double S_constant(double lambda, double epsilon, double r);

/// c * h0 + c.
double mainprop_bound(double c, double h0);

/// c = a * S(lambda, epsilon, r).
double mainprop_c(const QIParams& p, double r);

/// R = (1 / 2 lambda) (L / lambda - 3 epsilon - h0). Negative results are
/// permitted; they signal the vacuous regime.
double R_of_L(double L, double lambda, double epsilon, double h0);

/// The inverse: L = 2 lambda^2 R + 3 lambda epsilon + lambda h0.
double L_of_R(double R, double lambda, double epsilon, double h0);

/// Lower bound on the horizontal distance between the images of two points
/// D apart:
///   ln((D/lambda - epsilon) / (a (2 kappa + 2 delta + 1)) - 1)
///     - lambda (2 epsilon + 1) + 1.
/// Returns nullopt (the vacuous marker) when the logarithm argument is <= 0;
/// callers must not mistake a meaningless bound for a distance.
std::optional<double> horizontal_lower_bound(double D, const QIParams& p);

struct ProjectedQIParams {
  double lambda_prime;
  double epsilon_prime;
  double d_prime;
};

/// Constants of the projected map on the horizontal plane:
/// D' = lambda a (2 kappa + 2 delta + 1)(e^{lambda(2 epsilon + 1)} + 1)
///      + epsilon, lambda' = max(lambda, D'), epsilon' = max(epsilon, 1).
ProjectedQIParams projected_qi_params(const QIParams& p);

/// Result of checking the two-sided bounds
///   (1/lambda) d(x1,x2) - epsilon <= d(y1,y2) <= lambda d(x1,x2) + epsilon
/// over all sampled source pairs. `pass` means no violation on the sample
/// (within a 1e-9 comparison slack); the worst pair is reported by
/// lexicographic pair index. Almost-surjectivity is not checkable from
/// samples and is not part of this check.
struct QiCheckReport {
  bool pass = true;
  std::size_t sample_count = 0;
  std::size_t pair_count = 0;
  double worst_margin = 0.0;  // negative = size of the worst violation
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  bool worst_is_upper = false;
  double worst_source_distance = 0.0;
  double worst_image_distance = 0.0;
};

QiCheckReport verify_qi(const SampledMap& map, double lambda, double epsilon);

/// One composition to check: d(phi_u(phi_uPrime(x)), phi_composite(x)) <= kappa.
struct QuasiactionCase {
  std::string u;
  std::string u_prime;
  std::string composite;
};

struct QuasiactionReport {
  bool pass = true;
  std::size_t checked_samples = 0;
  std::size_t skipped_samples = 0;  // sources without a matching inner image
  double max_deviation = 0.0;
  std::string worst_case;  // "u,u',uu'" of the worst composition
};

/// Checks each composition case over the sources common to u_prime and the
/// composite map (matched within 1e-9). Throws IncompleteFamilyError when a
/// named map is missing or no sample is checkable at all.
QuasiactionReport verify_quasiaction(
    const std::map<std::string, SampledMap>& family,
    std::span<const QuasiactionCase> cases, double kappa);

}  // namespace qihyp::product_qi

#endif  // QIHYP_PRODUCT_QI_HPP
