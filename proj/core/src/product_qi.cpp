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

#include "qihyp/product_qi.hpp"

#include <cmath>

namespace qihyp::product_qi {

namespace {
constexpr double kCheckSlack = 1e-9;  // comparison slack for sampled checks
}

QIParams QIParams::derived(double lambda, double epsilon, double delta,
                           double a) {
  QIParams p;
  p.lambda = lambda;
  p.epsilon = epsilon;
  p.delta = delta;
  p.kappa = quasiaction_kappa(lambda, epsilon, delta);
  p.a = a;
  validate(p);
  return p;
}

void validate(const QIParams& p) {
  if (!(p.lambda >= 1.0)) throw ValidationError("QIParams: lambda must be >= 1");
  if (!(p.epsilon >= 0.0) || !(p.delta >= 0.0) || !(p.kappa >= 0.0)) {
    throw ValidationError("QIParams: epsilon, delta, kappa must be >= 0");
  }
  if (!(p.a > 0.0)) throw ValidationError("QIParams: a must be > 0");
}

std::optional<ProductPoint> SampledMap::image_of(const ProductPoint& p,
                                                 double tol) const {
  for (const auto& [src, img] : pairs) {
    if (product_distance(src, p) <= tol) return img;
  }
  return std::nullopt;
}

double product_distance(const ProductPoint& p, const ProductPoint& q) {
  return std::hypot(hyp2::distance(p.base, q.base), p.height - q.height);
}

double horizontal_distance(const ProductPoint& p, const ProductPoint& q) {
  return hyp2::distance(p.base, q.base);
}

double vertical_distance(const ProductPoint& p, const ProductPoint& q) {
  return std::abs(p.height - q.height);
}

double quasiaction_kappa(double lambda, double epsilon, double delta) {
  return lambda * delta + epsilon;
}

double S_constant(double lambda, double epsilon, double r) {
  return 2.0 * (std::cosh(2.0 * r + lambda * (1.0 + 2.0 * epsilon)) - 1.0);
}

double mainprop_bound(double c, double h0) { return c * h0 + c; }

double mainprop_c(const QIParams& p, double r) {
  return p.a * S_constant(p.lambda, p.epsilon, r);
}

double R_of_L(double L, double lambda, double epsilon, double h0) {
  return (L / lambda - 3.0 * epsilon - h0) / (2.0 * lambda);
}

double L_of_R(double R, double lambda, double epsilon, double h0) {
  return 2.0 * lambda * lambda * R + 3.0 * lambda * epsilon + lambda * h0;
}

std::optional<double> horizontal_lower_bound(double D, const QIParams& p) {
  validate(p);
  if (!(D > 0.0)) throw ValidationError("horizontal_lower_bound requires D > 0");
  const double denom = p.a * (2.0 * p.kappa + 2.0 * p.delta + 1.0);
  const double arg = (D / p.lambda - p.epsilon) / denom - 1.0;
  if (!(arg > 0.0)) return std::nullopt;
  return std::log(arg) - p.lambda * (2.0 * p.epsilon + 1.0) + 1.0;
}

ProjectedQIParams projected_qi_params(const QIParams& p) {
  validate(p);
  const double d_prime =
      p.lambda * p.a * (2.0 * p.kappa + 2.0 * p.delta + 1.0) *
          (std::exp(p.lambda * (2.0 * p.epsilon + 1.0)) + 1.0) +
      p.epsilon;
  return {std::max(p.lambda, d_prime), std::max(p.epsilon, 1.0), d_prime};
}

QiCheckReport verify_qi(const SampledMap& map, double lambda, double epsilon) {
  if (map.pairs.size() < 2) {
    throw ValidationError("verify_qi requires at least 2 sample pairs");
  }
  if (!(lambda >= 1.0) || !(epsilon >= 0.0)) {
    throw ValidationError("verify_qi requires lambda >= 1 and epsilon >= 0");
  }
  QiCheckReport report;
  report.sample_count = map.pairs.size();
  bool first = true;
  for (std::size_t i = 0; i < map.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < map.pairs.size(); ++j) {
      const double ds = product_distance(map.pairs[i].first, map.pairs[j].first);
      if (ds <= 0.0) {
        throw ValidationError("verify_qi: sampled sources must be distinct");
      }
      const double di = product_distance(map.pairs[i].second, map.pairs[j].second);
      const double upper = (lambda * ds + epsilon) - di;
      const double lower = di - (ds / lambda - epsilon);
      const double margin = std::min(upper, lower);
      ++report.pair_count;
      if (first || margin < report.worst_margin) {
        first = false;
        report.worst_margin = margin;
        report.worst_i = i;
        report.worst_j = j;
        report.worst_is_upper = upper < lower;
        report.worst_source_distance = ds;
        report.worst_image_distance = di;
      }
    }
  }
  report.pass = report.worst_margin >= -kCheckSlack;
  return report;
}

QuasiactionReport verify_quasiaction(
    const std::map<std::string, SampledMap>& family,
    std::span<const QuasiactionCase> cases, double kappa) {
  if (!(kappa >= 0.0)) throw ValidationError("kappa must be >= 0");
  QuasiactionReport report;
  bool first = true;
  for (const QuasiactionCase& c : cases) {
    const auto outer = family.find(c.u);
    const auto inner = family.find(c.u_prime);
    const auto composite = family.find(c.composite);
    if (outer == family.end() || inner == family.end()) {
      throw IncompleteFamilyError("quasiaction family is missing map for '" +
                                  (outer == family.end() ? c.u : c.u_prime) +
                                  "'");
    }
    if (composite == family.end()) {
      throw IncompleteFamilyError(
          "quasiaction family is missing composite map for '" + c.composite +
          "'");
    }
    for (const auto& [src, mid] : inner->second.pairs) {
      const auto composed_img = composite->second.image_of(src, kCheckSlack);
      const auto outer_img = outer->second.image_of(mid, kCheckSlack);
      if (!composed_img || !outer_img) {
        ++report.skipped_samples;
        continue;
      }
      const double dev = product_distance(*outer_img, *composed_img);
      ++report.checked_samples;
      if (first || dev > report.max_deviation) {
        first = false;
        report.max_deviation = dev;
        report.worst_case = c.u + "," + c.u_prime + "," + c.composite;
      }
    }
  }
  if (report.checked_samples == 0) {
    throw IncompleteFamilyError(
        "quasiaction family has no checkable common samples");
  }
  report.pass = report.max_deviation <= kappa + kCheckSlack;
  return report;
}

}  // namespace qihyp::product_qi
