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

#ifndef QIHYP_GROUPLAB_HPP
#define QIHYP_GROUPLAB_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qihyp/freewords.hpp"
#include "qihyp/hyp2.hpp"

// Finitely generated subgroups of PSL(2,R) probed numerically: word-ball
// enumeration, semilocal and local growth counts, elementarity heuristics,
// identity-neighborhood commutator sampling, and the small-free-pair
// construction whose commutator tower certifies superpolynomial semilocal
// growth. Everything here is evidence at desk scale, not proof; reports say
// so explicitly.
namespace qihyp::grouplab {

using hyp2::MoebiusElement;

struct Generator {
  std::string label;
  MoebiusElement element;
};

struct GroupSpec {
  std::vector<Generator> generators;
  bool inverse_closed = false;

  /// The generator set closed under inverses: when inverse_closed is set the
  /// set is validated as already closed; otherwise missing inverses are
  /// appended with labels suffixed by '. Labels must be unique.
  GroupSpec augmented() const;
};

enum class GrowthVariant { SemilocalOnly, CarriereLocal };

/// epsilon is the identity-neighborhood radius; dedupe_quantum the grid size
/// of the first dedupe tier (must be positive and <= epsilon / 10).
struct MetricConfig {
  double epsilon = 0.05;
  GrowthVariant variant = GrowthVariant::SemilocalOnly;
  double dedupe_quantum = 1e-4;
  std::size_t max_elements = 5'000'000;  // ball enumeration ceiling
};

void validate(const MetricConfig& cfg);

/// Distance of m from the identity: the Frobenius norm of (lift - I),
/// minimized over the two lifts of m.
double displacement(const MoebiusElement& m);

/// Left-invariant distance rho(g, h) = displacement(g^-1 h).
double rho(const MoebiusElement& g, const MoebiusElement& h);

/// Element equality is decided in two tiers: a quantized-entry bucket key,
/// then confirmation at kEqualTol. Distances inside (kEqualTol,
/// kAmbiguityTol] are surfaced as AmbiguityError instead of being guessed.
inline constexpr double kEqualTol = 1e-9;
inline constexpr double kAmbiguityTol = 1e-8;

struct BallEntry {
  MoebiusElement element;
  int word_length = 0;
  std::vector<std::uint16_t> witness;  // indices into the augmented generators
};

/// Renders a witness as its generator labels, "." separated.
std::string witness_string(const GroupSpec& augmented_spec,
                           std::span<const std::uint16_t> witness);

/// Breadth-first enumeration of the distinct elements of word length <= n
/// over the inverse-closed generator set. Entry 0 is the identity; each
/// entry carries a minimal-length witness. Deterministic. Throws
/// ResourceLimitError when cfg.max_elements is hit and AmbiguityError when
/// dedupe cannot decide equality.
std::vector<BallEntry> ball_enumerate(const GroupSpec& spec, int n,
                                      const MetricConfig& cfg);

struct GrowthRow {
  int n = 0;
  std::uint64_t ball_size = 0;
  std::uint64_t semilocal = 0;               // in N_epsilon, word length <= n
  std::optional<std::uint64_t> local;        // all witness prefixes in N_epsilon
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool lower_bound_evidence = false;  // true for tables built from tower counts
};

/// Rows n = 0..n_max of ball size and semilocal count; the local column is
/// filled for the CarriereLocal variant (reachability through N_epsilon
/// only).
GrowthTable semilocal_growth(const GroupSpec& spec, int n_max,
                             const MetricConfig& cfg);

struct ElementaryReport {
  bool common_interior_fixed = false;
  bool common_boundary_fixed = false;
  bool invariant_axis = false;
  bool elementary = false;
};

/// Numerically (tolerance 1e-8) tests the three elementary configurations:
/// a shared interior fixed point, a shared boundary fixed point, or a common
/// invariant geodesic (endpoint swaps allowed).
ElementaryReport classify_elementary(const GroupSpec& spec);

struct EllipticFind {
  BallEntry entry;
  double rotation_angle = 0.0;
  double min_rational_distance = 0.0;  // of angle/pi to p/q with q <= 64
  bool heuristically_infinite_order = true;
};

/// Scans the depth-ball in enumeration order for an elliptic whose angle
/// over pi stays farther than angle_tol from every rational with denominator
/// <= 64. Absence is a result, not an error.
std::optional<EllipticFind> find_infinite_order_elliptic(const GroupSpec& spec,
                                                         int depth,
                                                         double angle_tol,
                                                         const MetricConfig& cfg);

struct ZassenhausReport {
  double epsilon0 = 0.0;
  std::size_t samples = 0;
  double max_commutator_displacement = 0.0;
  bool pass = false;
};

/// Samples pairs uniformly (by rejection in matrix space) from the
/// epsilon0-neighborhood of the identity and reports the largest commutator
/// displacement observed. pass means every commutator stayed inside.
ZassenhausReport zassenhaus_check(double epsilon0, std::size_t sample_count,
                                  std::uint64_t seed);

/// Certifies a pair of epsilon0-small elements as free "as far as checked":
/// the eigenvector pairing condition holds with margin, and no nonempty
/// reduced word of length <= max_checked_length evaluates within 1e-6 of the
/// identity. weak marks the vacuous max_checked_length = 0 case.
struct FreePairCertificate {
  MoebiusElement a;
  MoebiusElement b;
  double epsilon0 = 0.0;
  int max_checked_length = 0;
  bool eigenvector_pairing_ok = false;
  bool weak = false;
  double min_pairing_magnitude = 0.0;
  double displacement_a = 0.0;
  double displacement_b = 0.0;
  int m_exponent = 0;  // set by build_free_pair
  int k_exponent = 0;
  int l_exponent = 0;
};

struct FreePairBudget {
  long max_power_steps = 2'000'000;  // per exponent search
  int max_m = 4;
  double angle_tol = 1e-5;  // rational-angle exclusion for the elliptic
};

/// Conjugates the infinite-order elliptic by the hyperbolic element to get a
/// second elliptic with a different fixed point, searches exponents k, l (in
/// steps of a candidate freeness exponent m) until both powers are
/// epsilon0-small, and certifies the pair by checking all nonempty reduced
/// words up to max_checked_length. Throws FreePairError on degenerate
/// pairing or exhausted budgets and ResourceLimitError when the power search
/// runs out.
FreePairCertificate build_free_pair(const MoebiusElement& elliptic,
                                    const MoebiusElement& hyperbolic,
                                    double epsilon0, int max_checked_length,
                                    const FreePairBudget& budget = {});

/// The verification half of build_free_pair for a pair given directly.
FreePairCertificate certify_free_pair(const MoebiusElement& a,
                                      const MoebiusElement& b, double epsilon0,
                                      int max_checked_length);

inline constexpr int kDefaultTowerCeiling = 2;

struct TowerRow {
  int level = 0;
  std::uint64_t images_in_neighborhood = 0;
  std::uint64_t floor_pow = 0;  // 2^{2^level}
  std::uint64_t distinct_images = 0;
  bool shortfall = false;
};

struct TowerReport {
  std::vector<TowerRow> rows;
  bool dichotomy_violation = false;
  std::string finding;  // set when a row falls short of its floor
};

/// Evaluates every level-i commutator word at (a, b) and counts the distinct
/// matrices (dedupe at kEqualTol) lying in N_epsilon0. A count below
/// 2^{2^i} is reported as a dichotomy-violation finding, never silently
/// passed.
TowerReport commutator_tower_growth(const FreePairCertificate& cert, int i_max,
                                    int ceiling = kDefaultTowerCeiling);

/// Lower-bound growth evidence from a tower: row n = 4^i counts the distinct
/// word images of length <= 4^i (cumulative over levels, identity included).
GrowthTable tower_growth_table(const FreePairCertificate& cert,
                               const TowerReport& tower);

enum class Verdict { DiscreteLikely, NonDiscreteLikely, Inconclusive };

struct VerdictReport {
  Verdict verdict = Verdict::Inconclusive;
  double A = 0.0;  // affine fit semilocal(n) ~ A n + B
  double B = 0.0;
  double max_residual = 0.0;
  int floor_exceedances = 0;  // rows n >= 1 with count >= 2^{sqrt(n)/4}
  GrowthTable evidence;
};

/// Heuristic dichotomy read-off from a growth table: an affine fit with per-
/// row residual <= 0.5 and no floor exceedance says DiscreteLikely; floor
/// exceedances at >= 2 sampled n >= 1 say NonDiscreteLikely; anything else
/// is Inconclusive. The evidence table rides along.
VerdictReport discreteness_verdict(const GrowthTable& table);
VerdictReport discreteness_verdict(const GroupSpec& spec, int n_max,
                                   const MetricConfig& cfg);

/// The orbit-point map: each enumerated element a is sent to
/// triple_to_point(a * base_triple). Equivariant to 1e-8.
std::vector<std::pair<int, hyp2::HPoint>> triple_orbit_map(
    const hyp2::IdealTriple& base_triple, std::span<const BallEntry> entries);

/// Evaluates a word at a -> gen_a, b -> gen_b.
MoebiusElement evaluate_word(const freewords::FreeWord& word,
                             const MoebiusElement& gen_a,
                             const MoebiusElement& gen_b);

}  // namespace qihyp::grouplab

#endif  // QIHYP_GROUPLAB_HPP
