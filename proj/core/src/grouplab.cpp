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

#include "qihyp/grouplab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>
#include <unordered_map>

#include "qihyp/rng.hpp"

namespace qihyp::grouplab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kElemTol = 1e-8;       // elementarity geometry tolerance
constexpr double kPairingTol = 1e-6;    // eigenvector pairing margin
constexpr double kCollisionTol = 1e-6;  // identity-collision threshold

double rho_raw(const double* g, const double* h) {
  // Entries of g^{-1} h for unit-determinant lifts.
  const double a = g[3] * h[0] - g[1] * h[2];
  const double b = g[3] * h[1] - g[1] * h[3];
  const double c = -g[2] * h[0] + g[0] * h[2];
  const double d = -g[2] * h[1] + g[0] * h[3];
  // ||M - sign(tr) I||_F picks the smaller lift. Subtracting entrywise
  // before squaring keeps full precision near the identity, where the
  // dedupe tolerances live.
  const double sign = (a + d) >= 0.0 ? 1.0 : -1.0;
  const double da = a - sign;
  const double dd = d - sign;
  return std::sqrt(da * da + b * b + c * c + dd * dd);
}

std::array<double, 4> entries_of(const MoebiusElement& m) {
  return {m.a(), m.b(), m.c(), m.d()};
}

struct QKey {
  std::array<std::int64_t, 4> v;
  bool operator==(const QKey&) const = default;
};

struct QKeyHash {
  std::size_t operator()(const QKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t x : k.v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

QKey canonicalize(std::array<std::int64_t, 4> q) {
  for (std::int64_t x : q) {
    if (x > 0) break;
    if (x < 0) {
      for (auto& y : q) y = -y;
      break;
    }
  }
  return {q};
}

// Two-tier element index: quantized-entry buckets (probing the 3^4 adjacent
// cells, sign-canonicalized) followed by metric confirmation.
class ElementIndex {
 public:
  explicit ElementIndex(double quantum) : quantum_(quantum) {}

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Match {
    std::size_t best = npos;
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t second = npos;
    double second_d = std::numeric_limits<double>::infinity();
  };

  Match find(const std::array<double, 4>& m) const {
    Match match;
    // Entries of two elements within the ambiguity tolerance can differ by
    // up to ~|g| * tol, so the cell probe band scales with the entry size.
    double scale = 1.0;
    for (double x : m) scale = std::max(scale, std::abs(x));
    const double band = std::min(0.45, 4.0 * kAmbiguityTol * scale / quantum_);

    std::array<std::int64_t, 4> base;
    std::array<std::array<std::int64_t, 2>, 4> cand;
    std::array<int, 4> cand_n;
    for (int i = 0; i < 4; ++i) {
      const double cells = m[i] / quantum_;
      base[i] = std::llround(cells);
      const double frac = cells - static_cast<double>(base[i]);
      cand[i][0] = base[i];
      cand_n[i] = 1;
      if (0.5 - std::abs(frac) <= band) {
        cand[i][1] = base[i] + (frac >= 0.0 ? 1 : -1);
        cand_n[i] = 2;
      }
    }
    std::array<std::int64_t, 4> probe;
    for (int i0 = 0; i0 < cand_n[0]; ++i0) {
      probe[0] = cand[0][i0];
      for (int i1 = 0; i1 < cand_n[1]; ++i1) {
        probe[1] = cand[1][i1];
        for (int i2 = 0; i2 < cand_n[2]; ++i2) {
          probe[2] = cand[2][i2];
          for (int i3 = 0; i3 < cand_n[3]; ++i3) {
            probe[3] = cand[3][i3];
            const auto it = buckets_.find(canonicalize(probe));
            if (it == buckets_.end()) continue;
            for (const std::uint32_t idx : it->second) {
              const double d = rho_raw(mats_[idx].data(), m.data());
              if (d > kAmbiguityTol) continue;
              if (idx == match.best) continue;
              if (d < match.best_d) {
                match.second = match.best;
                match.second_d = match.best_d;
                match.best = idx;
                match.best_d = d;
              } else if (d < match.second_d && idx != match.best) {
                match.second = idx;
                match.second_d = d;
              }
            }
          }
        }
      }
    }
    return match;
  }

  void insert(const std::array<double, 4>& m, std::uint32_t idx) {
    if (mats_.size() <= idx) mats_.resize(idx + 1);
    mats_[idx] = m;
    buckets_[canonicalize(quantized(m))].push_back(idx);
  }

 private:
  std::array<std::int64_t, 4> quantized(const std::array<double, 4>& m) const {
    std::array<std::int64_t, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = std::llround(m[i] / quantum_);
    return q;
  }

  double quantum_;
  std::vector<std::array<double, 4>> mats_;
  std::unordered_map<QKey, std::vector<std::uint32_t>, QKeyHash> buckets_;
};

double min_rational_angle_distance(double angle, int max_denominator = 64) {
  const double t = angle / kPi;
  double best = std::numeric_limits<double>::infinity();
  for (int q = 1; q <= max_denominator; ++q) {
    const double tq = t * q;
    best = std::min(best, std::abs(tq - std::round(tq)) / q);
  }
  return best;
}

MoebiusElement power(const MoebiusElement& m, int e) {
  MoebiusElement out;
  MoebiusElement base = e < 0 ? m.inverse() : m;
  for (int i = 0; i < std::abs(e); ++i) out = out * base;
  return out;
}

}  // namespace

void validate(const MetricConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) {
    throw ValidationError("MetricConfig: epsilon must be > 0");
  }
  if (!(cfg.dedupe_quantum > 0.0) || cfg.dedupe_quantum > cfg.epsilon / 10.0) {
    throw ValidationError(
        "MetricConfig: dedupe_quantum must be in (0, epsilon / 10]");
  }
  if (cfg.dedupe_quantum < 4.0 * kAmbiguityTol) {
    throw ValidationError(
        "MetricConfig: dedupe_quantum too fine for the confirmation tier");
  }
}

GroupSpec GroupSpec::augmented() const {
  if (generators.empty()) {
    throw ValidationError("GroupSpec requires at least one generator");
  }
  std::set<std::string> labels;
  for (const Generator& g : generators) {
    if (!labels.insert(g.label).second) {
      throw ValidationError("duplicate generator label '" + g.label + "'");
    }
  }
  GroupSpec out;
  out.inverse_closed = true;
  out.generators = generators;
  for (const Generator& g : generators) {
    const MoebiusElement inv = g.element.inverse();
    const bool present = std::any_of(
        generators.begin(), generators.end(),
        [&](const Generator& h) { return h.element.approx_equal(inv, 1e-12); });
    if (present) continue;
    if (inverse_closed) {
      throw ValidationError("generator set declared inverse-closed but '" +
                            g.label + "' has no inverse in the set");
    }
    std::string label = g.label + "'";
    while (!labels.insert(label).second) label += "'";
    out.generators.push_back({label, inv});
  }
  return out;
}

double displacement(const MoebiusElement& m) {
  const auto e = entries_of(m);
  static constexpr std::array<double, 4> kIdentity = {1.0, 0.0, 0.0, 1.0};
  return rho_raw(kIdentity.data(), e.data());
}

double rho(const MoebiusElement& g, const MoebiusElement& h) {
  const auto ge = entries_of(g);
  const auto he = entries_of(h);
  return rho_raw(ge.data(), he.data());
}

std::string witness_string(const GroupSpec& augmented_spec,
                           std::span<const std::uint16_t> witness) {
  if (witness.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) out += ".";
    out += augmented_spec.generators[witness[i]].label;
  }
  return out;
}

std::vector<BallEntry> ball_enumerate(const GroupSpec& spec, int n,
                                      const MetricConfig& cfg) {
  validate(cfg);
  if (n < 0) throw ValidationError("ball_enumerate requires n >= 0");
  const GroupSpec aug = spec.augmented();

  std::vector<BallEntry> entries;
  ElementIndex index(cfg.dedupe_quantum);
  entries.push_back({MoebiusElement(), 0, {}});
  index.insert(entries_of(entries[0].element), 0);

  std::size_t frontier_begin = 0;
  std::size_t frontier_end = 1;
  for (int len = 1; len <= n && frontier_begin < frontier_end; ++len) {
    for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
      const BallEntry parent = entries[idx];  // copy: entries may reallocate
      for (std::uint16_t g = 0; g < aug.generators.size(); ++g) {
        const MoebiusElement candidate =
            parent.element * aug.generators[g].element;
        const auto cand_entries = entries_of(candidate);
        const auto match = index.find(cand_entries);
        if (match.best_d <= kEqualTol) {
          if (match.second_d <= kEqualTol) {
            throw AmbiguityError(
                "ball dedupe: two stored elements both match candidate " +
                witness_string(aug, parent.witness) + "." +
                aug.generators[g].label + " (witnesses " +
                witness_string(aug, entries[match.best].witness) + " and " +
                witness_string(aug, entries[match.second].witness) + ")");
          }
          continue;  // known element
        }
        if (match.best_d <= kAmbiguityTol) {
          throw AmbiguityError(
              "ball dedupe: candidate " + witness_string(aug, parent.witness) +
              "." + aug.generators[g].label + " is " +
              std::to_string(match.best_d) + " from stored witness " +
              witness_string(aug, entries[match.best].witness) +
              ", between the confirmation and ambiguity tolerances");
        }
        if (entries.size() >= cfg.max_elements) {
          throw ResourceLimitError(
              "ball enumeration ceiling (max_elements = " +
              std::to_string(cfg.max_elements) + ") reached at word length " +
              std::to_string(len));
        }
        BallEntry entry;
        entry.element = candidate;
        entry.word_length = len;
        entry.witness = parent.witness;
        entry.witness.push_back(g);
        index.insert(cand_entries, static_cast<std::uint32_t>(entries.size()));
        entries.push_back(std::move(entry));
      }
    }
    frontier_begin = frontier_end;
    frontier_end = entries.size();
  }
  return entries;
}

namespace {

// Restricted breadth-first reachability through N_epsilon only; returns the
// count of elements whose every witness prefix stays inside, per depth.
std::vector<std::uint64_t> carriere_counts(const GroupSpec& aug, int n_max,
                                           const MetricConfig& cfg) {
  std::vector<MoebiusElement> elems;
  std::vector<int> depth;
  ElementIndex index(cfg.dedupe_quantum);
  elems.push_back(MoebiusElement());
  depth.push_back(0);
  index.insert(entries_of(elems[0]), 0);

  std::size_t begin = 0, end = 1;
  for (int len = 1; len <= n_max && begin < end; ++len) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const MoebiusElement parent = elems[idx];
      for (const Generator& g : aug.generators) {
        const MoebiusElement candidate = parent * g.element;
        if (displacement(candidate) > cfg.epsilon) continue;
        const auto cand_entries = entries_of(candidate);
        const auto match = index.find(cand_entries);
        if (match.best_d <= kEqualTol) continue;
        if (match.best_d <= kAmbiguityTol) {
          throw AmbiguityError(
              "local-growth dedupe: undecidable element equality at depth " +
              std::to_string(len));
        }
        index.insert(cand_entries, static_cast<std::uint32_t>(elems.size()));
        elems.push_back(candidate);
        depth.push_back(len);
      }
    }
    begin = end;
    end = elems.size();
  }

  std::vector<std::uint64_t> counts(n_max + 1, 0);
  for (int d : depth) {
    for (int n = d; n <= n_max; ++n) ++counts[n];
  }
  return counts;
}

}  // namespace

GrowthTable semilocal_growth(const GroupSpec& spec, int n_max,
                             const MetricConfig& cfg) {
  validate(cfg);
  if (n_max < 0) throw ValidationError("semilocal_growth requires n_max >= 0");
  const auto entries = ball_enumerate(spec, n_max, cfg);

  std::vector<std::uint64_t> ball(n_max + 1, 0);
  std::vector<std::uint64_t> semilocal(n_max + 1, 0);
  for (const BallEntry& e : entries) {
    const bool small = displacement(e.element) <= cfg.epsilon;
    for (int n = e.word_length; n <= n_max; ++n) {
      ++ball[n];
      if (small) ++semilocal[n];
    }
  }

  std::vector<std::uint64_t> local;
  if (cfg.variant == GrowthVariant::CarriereLocal) {
    local = carriere_counts(spec.augmented(), n_max, cfg);
  }

  GrowthTable table;
  for (int n = 0; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.ball_size = ball[n];
    row.semilocal = semilocal[n];
    if (cfg.variant == GrowthVariant::CarriereLocal) row.local = local[n];
    table.rows.push_back(row);
  }
  return table;
}

namespace {

using hyp2::BoundaryPoint;
using hyp2::IsomTag;

bool boundary_eq(const BoundaryPoint& x, const BoundaryPoint& y, double tol) {
  if (x.is_infinity() || y.is_infinity()) {
    return x.is_infinity() && y.is_infinity();
  }
  const double a = x.value(), b = y.value();
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Interior fixed point of an elliptic element (c != 0 for elliptics).
hyp2::HPoint elliptic_fixed_point(const MoebiusElement& m) {
  const double tr = m.trace();
  const double disc = 4.0 - tr * tr;
  const double x = (m.a() - m.d()) / (2.0 * m.c());
  const double y = std::sqrt(disc) / (2.0 * std::abs(m.c()));
  return hyp2::HPoint(x, y);
}

std::vector<BoundaryPoint> boundary_fixed_points(const MoebiusElement& m) {
  std::vector<BoundaryPoint> out;
  const double scale =
      std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.c()), std::abs(m.d())});
  if (std::abs(m.c()) <= 1e-14 * scale) {
    out.push_back(BoundaryPoint::infinity());
    if (std::abs(m.d() - m.a()) > 1e-14 * scale) {
      out.push_back(BoundaryPoint::at(m.b() / (m.d() - m.a())));
    }
    return out;
  }
  const double tr = m.trace();
  const double disc = tr * tr - 4.0;
  if (disc > 1e-14) {
    const double root = std::sqrt(disc);
    out.push_back(BoundaryPoint::at((m.a() - m.d() + root) / (2.0 * m.c())));
    out.push_back(BoundaryPoint::at((m.a() - m.d() - root) / (2.0 * m.c())));
  } else if (disc > -1e-14) {
    out.push_back(BoundaryPoint::at((m.a() - m.d()) / (2.0 * m.c())));
  }
  return out;
}

bool fixes_boundary(const MoebiusElement& m, const BoundaryPoint& b, double tol) {
  return boundary_eq(boundary_apply(m, b), b, tol);
}

// Endpoints of the geodesic through two interior points.
std::pair<BoundaryPoint, BoundaryPoint> geodesic_endpoints(
    const hyp2::HPoint& z1, const hyp2::HPoint& z2) {
  if (std::abs(z1.x - z2.x) <= 1e-12 * std::max(1.0, std::abs(z1.x))) {
    return {BoundaryPoint::at(z1.x), BoundaryPoint::infinity()};
  }
  const double c = (z2.x * z2.x + z2.y * z2.y - z1.x * z1.x - z1.y * z1.y) /
                   (2.0 * (z2.x - z1.x));
  const double rad = std::hypot(z1.x - c, z1.y);
  return {BoundaryPoint::at(c - rad), BoundaryPoint::at(c + rad)};
}

bool preserves_axis(const MoebiusElement& m, const BoundaryPoint& p,
                    const BoundaryPoint& q, double tol) {
  const BoundaryPoint mp = boundary_apply(m, p);
  const BoundaryPoint mq = boundary_apply(m, q);
  return (boundary_eq(mp, p, tol) && boundary_eq(mq, q, tol)) ||
         (boundary_eq(mp, q, tol) && boundary_eq(mq, p, tol));
}

}  // namespace

ElementaryReport classify_elementary(const GroupSpec& spec) {
  if (spec.generators.empty()) {
    throw ValidationError("classify_elementary requires >= 1 generator");
  }
  std::vector<const MoebiusElement*> nontrivial;
  std::vector<hyp2::IsomClass> classes;
  for (const Generator& g : spec.generators) {
    const auto cls = hyp2::classify(g.element);
    if (cls.tag != IsomTag::Identity) {
      nontrivial.push_back(&g.element);
      classes.push_back(cls);
    }
  }

  ElementaryReport report;
  if (nontrivial.empty()) {
    report.common_interior_fixed = true;
    report.common_boundary_fixed = true;
    report.invariant_axis = true;
    report.elementary = true;
    return report;
  }

  // Shared interior fixed point: seeded from the first elliptic.
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    if (classes[i].tag != IsomTag::Elliptic) continue;
    const hyp2::HPoint p = elliptic_fixed_point(*nontrivial[i]);
    bool all = true;
    for (const Generator& g : spec.generators) {
      if (hyp2::distance(hyp2::apply(g.element, p), p) > kElemTol) {
        all = false;
        break;
      }
    }
    report.common_interior_fixed = all;
    break;
  }

  // Shared boundary fixed point: impossible as soon as an elliptic appears.
  const bool any_elliptic =
      std::any_of(classes.begin(), classes.end(), [](const hyp2::IsomClass& c) {
        return c.tag == IsomTag::Elliptic;
      });
  if (!any_elliptic) {
    for (const BoundaryPoint& candidate : boundary_fixed_points(*nontrivial[0])) {
      bool all = true;
      for (const Generator& g : spec.generators) {
        if (!fixes_boundary(g.element, candidate, kElemTol)) {
          all = false;
          break;
        }
      }
      if (all) {
        report.common_boundary_fixed = true;
        break;
      }
    }
  }

  // Invariant axis candidates: axes of hyperbolic generators, plus the
  // geodesic through the first two distinct elliptic centers (covering
  // half-turn pairs).
  std::vector<std::pair<BoundaryPoint, BoundaryPoint>> candidates;
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    if (classes[i].tag != IsomTag::Hyperbolic) continue;
    const auto fixed = boundary_fixed_points(*nontrivial[i]);
    if (fixed.size() == 2) candidates.emplace_back(fixed[0], fixed[1]);
  }
  std::vector<hyp2::HPoint> centers;
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    if (classes[i].tag == IsomTag::Elliptic) {
      centers.push_back(elliptic_fixed_point(*nontrivial[i]));
    }
  }
  for (std::size_t i = 1; i < centers.size(); ++i) {
    if (hyp2::distance(centers[0], centers[i]) > kElemTol) {
      candidates.push_back(geodesic_endpoints(centers[0], centers[i]));
      break;
    }
  }
  for (const auto& [p, q] : candidates) {
    bool all = true;
    for (const Generator& g : spec.generators) {
      if (!preserves_axis(g.element, p, q, kElemTol)) {
        all = false;
        break;
      }
    }
    if (all) {
      report.invariant_axis = true;
      break;
    }
  }

  report.elementary = report.common_interior_fixed ||
                      report.common_boundary_fixed || report.invariant_axis;
  return report;
}

std::optional<EllipticFind> find_infinite_order_elliptic(
    const GroupSpec& spec, int depth, double angle_tol,
    const MetricConfig& cfg) {
  if (!(angle_tol > 0.0)) {
    throw ValidationError("find_infinite_order_elliptic requires angle_tol > 0");
  }
  const auto entries = ball_enumerate(spec, depth, cfg);
  for (const BallEntry& entry : entries) {
    const auto cls = hyp2::classify(entry.element);
    if (cls.tag != IsomTag::Elliptic) continue;
    const double dist = min_rational_angle_distance(*cls.rotation_angle);
    if (dist > angle_tol) {
      EllipticFind find;
      find.entry = entry;
      find.rotation_angle = *cls.rotation_angle;
      find.min_rational_distance = dist;
      return find;
    }
  }
  return std::nullopt;
}

ZassenhausReport zassenhaus_check(double epsilon0, std::size_t sample_count,
                                  std::uint64_t seed) {
  if (!(epsilon0 > 0.0)) {
    throw ValidationError("zassenhaus_check requires epsilon0 > 0");
  }
  Rng rng(seed);
  long budget = 20'000'000;
  auto draw_small = [&]() {
    while (budget-- > 0) {
      const double a = 1.0 + rng.uniform(-epsilon0, epsilon0);
      const double b = rng.uniform(-epsilon0, epsilon0);
      const double c = rng.uniform(-epsilon0, epsilon0);
      const double d = 1.0 + rng.uniform(-epsilon0, epsilon0);
      if (a * d - b * c <= 1e-12) continue;
      MoebiusElement m(a, b, c, d);
      if (displacement(m) <= epsilon0) return m;
    }
    throw ResourceLimitError(
        "zassenhaus_check rejection-sampling budget (2e7 draws) exhausted");
  };

  ZassenhausReport report;
  report.epsilon0 = epsilon0;
  report.samples = sample_count;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const MoebiusElement f = draw_small();
    const MoebiusElement g = draw_small();
    const MoebiusElement comm = f * g * f.inverse() * g.inverse();
    report.max_commutator_displacement =
        std::max(report.max_commutator_displacement, displacement(comm));
  }
  report.pass = report.max_commutator_displacement <= epsilon0;
  return report;
}

namespace {

using Complex = std::complex<double>;

struct EigenPair {
  Complex vectors[2][2];  // unit-norm eigenvector columns
};

EigenPair eigenvectors_of(const MoebiusElement& m) {
  const Complex tr = m.trace();
  const Complex root = std::sqrt(tr * tr - 4.0);
  const Complex lams[2] = {(tr + root) / 2.0, (tr - root) / 2.0};
  EigenPair out;
  for (int i = 0; i < 2; ++i) {
    // (A - lam) v = 0: v = (b, lam - a) unless that row vanishes.
    Complex v0 = m.b();
    Complex v1 = lams[i] - m.a();
    if (std::abs(v0) + std::abs(v1) < 1e-14) {
      v0 = lams[i] - m.d();
      v1 = m.c();
    }
    const double norm = std::sqrt(std::norm(v0) + std::norm(v1));
    out.vectors[0][i] = v0 / norm;
    out.vectors[1][i] = v1 / norm;
  }
  return out;
}

// min over the four pairings |w_i^*(v_j)|, where w^* runs over the dual
// basis of y's eigenvectors and v over x's eigenvectors (all unit norm).
double min_eigenvector_pairing(const MoebiusElement& x, const MoebiusElement& y) {
  const EigenPair v = eigenvectors_of(x);
  const EigenPair w = eigenvectors_of(y);
  const Complex det =
      w.vectors[0][0] * w.vectors[1][1] - w.vectors[0][1] * w.vectors[1][0];
  if (std::abs(det) < 1e-12) return 0.0;  // eigenvectors (nearly) parallel
  // Rows of W^{-1} are the dual functionals.
  const Complex dual[2][2] = {{w.vectors[1][1] / det, -w.vectors[0][1] / det},
                              {-w.vectors[1][0] / det, w.vectors[0][0] / det}};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex p =
          dual[i][0] * v.vectors[0][j] + dual[i][1] * v.vectors[1][j];
      best = std::min(best, std::abs(p));
    }
  }
  return best;
}

std::optional<freewords::FreeWord> find_identity_collision(
    const MoebiusElement& a, const MoebiusElement& b, int max_len) {
  const MoebiusElement gens[4] = {a, b, a.inverse(), b.inverse()};
  const int inverse_of[4] = {2, 3, 0, 1};
  freewords::FreeWord word;
  std::optional<freewords::FreeWord> found;

  auto dfs = [&](auto&& self, const MoebiusElement& prefix, int last) -> bool {
    for (int letter = 0; letter < 4; ++letter) {
      if (last >= 0 && letter == inverse_of[last]) continue;
      const MoebiusElement next = prefix * gens[letter];
      word.push_back(static_cast<freewords::Letter>(letter));
      if (displacement(next) <= kCollisionTol) {
        found = word;
        return true;
      }
      if (static_cast<int>(word.size()) < max_len && self(self, next, letter)) {
        return true;
      }
      word.pop_back();
    }
    return false;
  };
  dfs(dfs, MoebiusElement(), -1);
  return found;
}

// An exponent t in [1, max_steps] with displacement(base^t) <= epsilon0,
// preferring displacements in the upper half of the neighborhood: the
// nested commutator scales of the tower shrink like powers of the
// displacement, so powers near the cap keep the higher levels resolvable
// in double precision.
std::pair<int, MoebiusElement> small_power(const MoebiusElement& base,
                                           double epsilon0, long max_steps) {
  MoebiusElement cur = base;
  std::pair<int, MoebiusElement> best{0, cur};
  double best_d = -1.0;
  for (long t = 1; t <= max_steps; ++t) {
    const double d = displacement(cur);
    if (d <= epsilon0 && d > best_d) {
      best = {static_cast<int>(t), cur};
      best_d = d;
      if (d >= 0.5 * epsilon0) return best;
    }
    cur = cur * base;
  }
  if (best_d >= 0.0) return best;
  throw ResourceLimitError("free-pair power search budget (" +
                           std::to_string(max_steps) + " steps) exhausted");
}

}  // namespace

FreePairCertificate certify_free_pair(const MoebiusElement& a,
                                      const MoebiusElement& b, double epsilon0,
                                      int max_checked_length) {
  if (!(epsilon0 > 0.0) || max_checked_length < 0) {
    throw ValidationError("certify_free_pair requires epsilon0 > 0 and "
                          "max_checked_length >= 0");
  }
  for (const MoebiusElement* m : {&a, &b}) {
    const auto cls = hyp2::classify(*m);
    if (cls.tag != IsomTag::Elliptic && cls.tag != IsomTag::Hyperbolic) {
      throw FreePairError(
          "free-pair elements must be semisimple with distinct eigenvalues "
          "(elliptic or hyperbolic)");
    }
  }
  FreePairCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.epsilon0 = epsilon0;
  cert.max_checked_length = max_checked_length;
  cert.displacement_a = displacement(a);
  cert.displacement_b = displacement(b);
  if (cert.displacement_a > epsilon0 || cert.displacement_b > epsilon0) {
    throw FreePairError("free-pair elements are not epsilon0-small");
  }
  cert.min_pairing_magnitude = min_eigenvector_pairing(a, b);
  cert.eigenvector_pairing_ok = cert.min_pairing_magnitude >= kPairingTol;
  if (!cert.eigenvector_pairing_ok) {
    throw FreePairError("eigenvector pairing degenerate (min |w*(v)| = " +
                        std::to_string(cert.min_pairing_magnitude) + ")");
  }
  if (max_checked_length > 0) {
    const auto collision = find_identity_collision(a, b, max_checked_length);
    if (collision) {
      throw FreePairError("certificate refused: word " +
                          freewords::to_string(*collision) +
                          " evaluates to the identity within " +
                          std::to_string(kCollisionTol));
    }
  }
  cert.weak = max_checked_length == 0;
  return cert;
}

FreePairCertificate build_free_pair(const MoebiusElement& elliptic,
                                    const MoebiusElement& hyperbolic,
                                    double epsilon0, int max_checked_length,
                                    const FreePairBudget& budget) {
  const auto cls_e = hyp2::classify(elliptic);
  if (cls_e.tag != IsomTag::Elliptic) {
    throw FreePairError("build_free_pair requires an elliptic first element");
  }
  if (min_rational_angle_distance(*cls_e.rotation_angle) <= budget.angle_tol) {
    throw FreePairError(
        "elliptic rotation angle is too close to a rational multiple of pi "
        "to pass the infinite-order heuristic");
  }
  if (hyp2::classify(hyperbolic).tag != IsomTag::Hyperbolic) {
    throw FreePairError("build_free_pair requires a hyperbolic conjugator");
  }
  const MoebiusElement beta = hyperbolic * elliptic * hyperbolic.inverse();

  std::string last_refusal;
  for (int m = 1; m <= budget.max_m; ++m) {
    const MoebiusElement alpha_m = power(elliptic, m);
    const MoebiusElement beta_m = power(beta, m);
    const auto [k, a] = small_power(alpha_m, epsilon0, budget.max_power_steps);
    const auto [l, b] = small_power(beta_m, epsilon0, budget.max_power_steps);
    try {
      FreePairCertificate cert =
          certify_free_pair(a, b, epsilon0, max_checked_length);
      cert.m_exponent = m;
      cert.k_exponent = k;
      cert.l_exponent = l;
      return cert;
    } catch (const FreePairError& e) {
      last_refusal = e.what();
    }
  }
  throw FreePairError("no certified pair within the freeness-exponent budget (m <= " +
                      std::to_string(budget.max_m) + "); last refusal: " +
                      last_refusal);
}

namespace {

// Deduplicated matrices (at kEqualTol) from evaluating words at (a, b).
std::vector<MoebiusElement> distinct_images(
    const std::vector<freewords::FreeWord>& words, const MoebiusElement& a,
    const MoebiusElement& b, std::vector<MoebiusElement>* seed = nullptr) {
  std::vector<MoebiusElement> out = seed ? *seed : std::vector<MoebiusElement>{};
  for (const auto& w : words) {
    const MoebiusElement img = evaluate_word(w, a, b);
    const bool known = std::any_of(out.begin(), out.end(), [&](const auto& m) {
      return rho(m, img) <= kEqualTol;
    });
    if (!known) out.push_back(img);
  }
  return out;
}

}  // namespace

MoebiusElement evaluate_word(const freewords::FreeWord& word,
                             const MoebiusElement& gen_a,
                             const MoebiusElement& gen_b) {
  const MoebiusElement gens[4] = {gen_a, gen_b, gen_a.inverse(),
                                  gen_b.inverse()};
  MoebiusElement out;
  for (const auto letter : word) {
    out = out * gens[static_cast<int>(letter)];
  }
  return out;
}

TowerReport commutator_tower_growth(const FreePairCertificate& cert, int i_max,
                                    int ceiling) {
  if (i_max < 0) throw ValidationError("commutator_tower_growth requires i_max >= 0");
  if (i_max > ceiling) {
    throw ResourceLimitError("commutator tower ceiling (" +
                             std::to_string(ceiling) + ") exceeded by i_max = " +
                             std::to_string(i_max));
  }
  TowerReport report;
  const int word_ceiling = std::max(ceiling, freewords::kDefaultLevelCeiling);
  for (int i = 0; i <= i_max; ++i) {
    const auto level = freewords::gen_comm_level(i, word_ceiling);
    const auto images = distinct_images(level.words, cert.a, cert.b);
    TowerRow row;
    row.level = i;
    row.distinct_images = images.size();
    for (const MoebiusElement& m : images) {
      if (displacement(m) <= cert.epsilon0 + 1e-12) ++row.images_in_neighborhood;
    }
    row.floor_pow = std::uint64_t{1} << (std::uint64_t{1} << i);
    row.shortfall = row.images_in_neighborhood < row.floor_pow;
    if (row.shortfall && !report.dichotomy_violation) {
      report.dichotomy_violation = true;
      report.finding =
          "level " + std::to_string(i) + " produced " +
          std::to_string(row.images_in_neighborhood) +
          " distinct small images, below the floor " +
          std::to_string(row.floor_pow) +
          "; the pair is either not free or epsilon0 is too small";
    }
    report.rows.push_back(row);
  }
  return report;
}

GrowthTable tower_growth_table(const FreePairCertificate& cert,
                               const TowerReport& tower) {
  GrowthTable table;
  table.lower_bound_evidence = true;
  std::vector<MoebiusElement> cumulative;
  const int levels = static_cast<int>(tower.rows.size());
  const int word_ceiling =
      std::max(levels - 1, freewords::kDefaultLevelCeiling);
  for (int i = 0; i < levels; ++i) {
    const auto level = freewords::gen_comm_level(i, word_ceiling);
    cumulative = distinct_images(level.words, cert.a, cert.b, &cumulative);
    std::uint64_t in_n = 0;
    for (const MoebiusElement& m : cumulative) {
      if (displacement(m) <= cert.epsilon0 + 1e-12) ++in_n;
    }
    GrowthRow row;
    row.n = 1;
    for (int p = 0; p < i; ++p) row.n *= 4;
    row.ball_size = cumulative.size() + 1;  // identity included
    row.semilocal = in_n + 1;
    table.rows.push_back(row);
  }
  return table;
}

VerdictReport discreteness_verdict(const GrowthTable& table) {
  if (table.rows.empty()) {
    throw ValidationError("discreteness_verdict requires a nonempty table");
  }
  VerdictReport report;
  report.evidence = table;

  // Least-squares affine fit semilocal(n) ~ A n + B.
  double sn = 0.0, sc = 0.0, snn = 0.0, snc = 0.0;
  const double m = static_cast<double>(table.rows.size());
  for (const GrowthRow& row : table.rows) {
    const double n = row.n;
    const double c = static_cast<double>(row.semilocal);
    sn += n;
    sc += c;
    snn += n * n;
    snc += n * c;
  }
  const double var = snn - sn * sn / m;
  report.A = var > 0.0 ? (snc - sn * sc / m) / var : 0.0;
  report.B = (sc - report.A * sn) / m;
  for (const GrowthRow& row : table.rows) {
    const double fit = report.A * row.n + report.B;
    report.max_residual = std::max(
        report.max_residual, std::abs(static_cast<double>(row.semilocal) - fit));
  }
  for (const GrowthRow& row : table.rows) {
    if (row.n < 1) continue;  // floor(0) = 1 is met by the identity alone
    if (static_cast<double>(row.semilocal) >=
        freewords::growth_floor(row.n) - 1e-9) {
      ++report.floor_exceedances;
    }
  }

  if (report.floor_exceedances >= 2) {
    report.verdict = Verdict::NonDiscreteLikely;
  } else if (report.max_residual <= 0.5 && report.floor_exceedances == 0) {
    report.verdict = Verdict::DiscreteLikely;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

VerdictReport discreteness_verdict(const GroupSpec& spec, int n_max,
                                   const MetricConfig& cfg) {
  return discreteness_verdict(semilocal_growth(spec, n_max, cfg));
}

std::vector<std::pair<int, hyp2::HPoint>> triple_orbit_map(
    const hyp2::IdealTriple& base_triple, std::span<const BallEntry> entries) {
  std::vector<std::pair<int, hyp2::HPoint>> out;
  out.reserve(entries.size());
  for (const BallEntry& e : entries) {
    const hyp2::IdealTriple moved(hyp2::boundary_apply(e.element, base_triple.p1),
                                  hyp2::boundary_apply(e.element, base_triple.p2),
                                  hyp2::boundary_apply(e.element, base_triple.p3));
    out.emplace_back(e.word_length, hyp2::triple_to_point(moved));
  }
  return out;
}

}  // namespace qihyp::grouplab
