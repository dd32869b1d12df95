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

#include "qihyp/packing.hpp"

#include <cmath>
#include <future>

#include "qihyp/hyp2.hpp"
#include "qihyp/rng.hpp"

namespace qihyp::packing {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Radial/angular form of a center with the trigonometry cached so the
// separation test needs no transcendentals.
struct Polar {
  double t;        // distance from the ambient center
  double cos_phi;
  double sin_phi;
  double cosh_t;   // hyperbolic only
  double sinh_t;   // hyperbolic only
};

// cosh of the hyperbolic distance via the law of cosines.
double cosh_dist(const Polar& p, const Polar& q) {
  const double cos_dphi = p.cos_phi * q.cos_phi + p.sin_phi * q.sin_phi;
  return p.cosh_t * q.cosh_t - p.sinh_t * q.sinh_t * cos_dphi;
}

double euclid_dist2(const Polar& p, const Polar& q) {
  const double cos_dphi = p.cos_phi * q.cos_phi + p.sin_phi * q.sin_phi;
  return p.t * p.t + q.t * q.t - 2.0 * p.t * q.t * cos_dphi;
}

// Upper half-plane coordinates of the point at hyperbolic distance t from
// (0, 1) in direction phi: through the disk model, w = tanh(t/2) e^{i phi},
// then z = i (1 + w) / (1 - w).
std::array<double, 2> half_plane_from_polar(const Polar& p) {
  const double rho = std::tanh(p.t / 2.0);
  const double u = rho * p.cos_phi;
  const double v = rho * p.sin_phi;
  const double denom = (1.0 - u) * (1.0 - u) + v * v;
  return {-2.0 * v / denom, (1.0 - u * u - v * v) / denom};
}

}  // namespace

void validate(const PackingConfig& config) {
  if (!(config.R > config.r) || !(config.r > 0.0) || !(config.s >= 0.0)) {
    throw ValidationError("PackingConfig requires R > r > 0 and s >= 0");
  }
}

double euclid_packing_bound(double R, double r, double s) {
  const double ratio = (R + s) / (r + s);
  return ratio * ratio;
}

double hyp_packing_bound(double R, double r, double s) {
  return (std::exp(R) - 2.0) / (2.0 * (std::cosh(2.0 * (r + s)) - 1.0));
}

double bound_for(const PackingConfig& config) {
  return config.space == Space::Euclidean
             ? euclid_packing_bound(config.R, config.r, config.s)
             : hyp_packing_bound(config.R, config.r, config.s);
}

PackingResult greedy_pack(const PackingConfig& config, std::uint64_t seed,
                          int reject_samples) {
  if (!(config.r > 0.0) || !(config.s >= 0.0) || !(config.R > 0.0)) {
    throw ValidationError("greedy_pack requires R, r > 0 and s >= 0");
  }
  PackingResult result;
  result.config = config;
  result.seed = seed;

  const double rho = config.R - config.r;  // admissible center radius
  if (!(rho > 0.0)) {
    result.maximal = true;  // no admissible center at all
    return result;
  }

  const double sep = 2.0 * (config.r + config.s);
  const bool hyperbolic = config.space == Space::Hyperbolic;
  const double cosh_rho_m1 = hyperbolic ? std::cosh(rho) - 1.0 : 0.0;
  const double cosh_sep = hyperbolic ? std::cosh(sep) : 0.0;
  const double sep2 = sep * sep;

  Rng rng(seed);
  std::vector<Polar> accepted;
  int consecutive_rejects = 0;
  while (consecutive_rejects < reject_samples) {
    Polar cand;
    const double u = rng.uniform01();
    const double phi = kTwoPi * rng.uniform01();
    cand.cos_phi = std::cos(phi);
    cand.sin_phi = std::sin(phi);
    if (hyperbolic) {
      // Inverse CDF of the area measure: cosh t - 1 uniform on [0, cosh rho - 1].
      cand.cosh_t = 1.0 + u * cosh_rho_m1;
      cand.t = std::acosh(cand.cosh_t);
      cand.sinh_t = std::sinh(cand.t);
    } else {
      cand.t = rho * std::sqrt(u);
    }

    bool admissible = true;
    for (const Polar& c : accepted) {
      if (std::abs(c.t - cand.t) >= sep) continue;  // radial gap already enough
      if (hyperbolic) {
        if (cosh_dist(c, cand) < cosh_sep) {
          admissible = false;
          break;
        }
      } else {
        if (euclid_dist2(c, cand) < sep2) {
          admissible = false;
          break;
        }
      }
    }
    if (admissible) {
      accepted.push_back(cand);
      consecutive_rejects = 0;
    } else {
      ++consecutive_rejects;
    }
  }

  result.centers.reserve(accepted.size());
  for (const Polar& c : accepted) {
    if (hyperbolic) {
      result.centers.push_back(half_plane_from_polar(c));
    } else {
      result.centers.push_back({c.t * c.cos_phi, c.t * c.sin_phi});
    }
  }
  result.maximal = true;
  result.reject_samples = reject_samples;
  return result;
}

double recheck_invariants(const PackingResult& result) {
  const PackingConfig& config = result.config;
  const bool hyperbolic = config.space == Space::Hyperbolic;
  const double rho = config.R - config.r;
  const double sep = 2.0 * (config.r + config.s);
  const hyp2::HPoint origin(0.0, 1.0);

  auto dist_to_origin = [&](const std::array<double, 2>& c) {
    if (hyperbolic) return hyp2::distance(hyp2::HPoint(c[0], c[1]), origin);
    return std::hypot(c[0], c[1]);
  };
  auto dist = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) {
    if (hyperbolic) {
      return hyp2::distance(hyp2::HPoint(p[0], p[1]), hyp2::HPoint(q[0], q[1]));
    }
    return std::hypot(p[0] - q[0], p[1] - q[1]);
  };

  double worst = rho;
  for (std::size_t i = 0; i < result.centers.size(); ++i) {
    worst = std::min(worst, rho - dist_to_origin(result.centers[i]));
    for (std::size_t j = i + 1; j < result.centers.size(); ++j) {
      worst = std::min(worst, dist(result.centers[i], result.centers[j]) - sep);
    }
  }
  return worst;
}

std::vector<CompareRow> pack_compare(std::span<const double> Rs, double r,
                                     double s, std::uint64_t seed,
                                     int threads) {
  if (threads < 1) threads = 1;
  std::vector<CompareRow> rows(Rs.size());

  auto compute_row = [&](std::size_t i) {
    const double R = Rs[i];
    const PackingConfig euclid{Space::Euclidean, R, r, s};
    const PackingConfig hyper{Space::Hyperbolic, R, r, s};
    validate(euclid);
    CompareRow row;
    row.R = R;
    row.euclid_count = greedy_pack(euclid, mix_seed(seed, 2 * i)).count();
    row.euclid_bound = euclid_packing_bound(R, r, s);
    row.hyp_count = greedy_pack(hyper, mix_seed(seed, 2 * i + 1)).count();
    row.hyp_bound = hyp_packing_bound(R, r, s);
    row.ratio = static_cast<double>(row.hyp_count) /
                static_cast<double>(row.euclid_count);
    rows[i] = row;
  };

  if (threads == 1 || Rs.size() < 2) {
    for (std::size_t i = 0; i < Rs.size(); ++i) compute_row(i);
    return rows;
  }
  std::vector<std::future<void>> pending;
  std::size_t next = 0;
  while (next < Rs.size()) {
    pending.clear();
    const std::size_t batch =
        std::min<std::size_t>(threads, Rs.size() - next);
    for (std::size_t k = 0; k < batch; ++k) {
      pending.push_back(
          std::async(std::launch::async, compute_row, next + k));
    }
    for (auto& f : pending) f.get();
    next += batch;
  }
  return rows;
}

}  // namespace qihyp::packing
