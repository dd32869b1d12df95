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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qihyp/grouplab.hpp"

using namespace qihyp;
using namespace qihyp::grouplab;
using hyp2::HPoint;
using hyp2::IsomTag;
using hyp2::MoebiusElement;
namespace qt = qihyp::testing;

namespace {

GroupSpec sanov_spec() {
  return {{{"x", MoebiusElement(1, 2, 0, 1)}, {"y", MoebiusElement(1, 0, 2, 1)}},
          false};
}

GroupSpec cyclic_spec() {
  return {{{"t", MoebiusElement(2, 0, 0, 0.5)}}, false};
}

GroupSpec trivial_spec() {
  return {{{"e", MoebiusElement()}}, false};
}

MetricConfig config_for(double epsilon) {
  MetricConfig cfg;
  cfg.epsilon = epsilon;
  cfg.dedupe_quantum = epsilon / 10.0;
  return cfg;
}

}  // namespace

TEST_CASE("rho: identity, PSL identification, left invariance") {
  const MoebiusElement g = MoebiusElement::rotation(HPoint(0.4, 1.3), 0.9);
  CHECK(rho(g, g) == doctest::Approx(0.0));
  // The -I lift canonicalizes to the identity, so rho(e, -I) = 0.
  CHECK(rho(MoebiusElement(), MoebiusElement(-1, 0, 0, -1)) ==
        doctest::Approx(0.0));

  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const MoebiusElement k = qt::random_moebius(rng);
    const MoebiusElement a = qt::random_moebius(rng);
    const MoebiusElement b = qt::random_moebius(rng);
    CHECK(std::abs(rho(k * a, k * b) - rho(a, b)) <= 1e-12 *
          std::max(1.0, rho(a, b)));
  }
}

TEST_CASE("group spec validation") {
  GroupSpec dup{{{"g", MoebiusElement()}, {"g", MoebiusElement(1, 1, 0, 1)}},
                false};
  CHECK_THROWS_AS(dup.augmented(), ValidationError);

  GroupSpec claims_closed = sanov_spec();
  claims_closed.inverse_closed = true;
  CHECK_THROWS_AS(claims_closed.augmented(), ValidationError);

  const GroupSpec aug = sanov_spec().augmented();
  CHECK(aug.generators.size() == 4);
}

TEST_CASE("ball enumeration: Sanov generators match the free-group oracle") {
  const MetricConfig cfg = config_for(0.01);
  const auto ball1 = ball_enumerate(sanov_spec(), 1, cfg);
  CHECK(ball1.size() == 5);
  const auto ball2 = ball_enumerate(sanov_spec(), 2, cfg);
  CHECK(ball2.size() == 17);

  const auto ball = ball_enumerate(sanov_spec(), 8, cfg);
  std::vector<std::uint64_t> sizes(9, 0);
  for (const auto& e : ball) {
    for (int n = e.word_length; n <= 8; ++n) ++sizes[n];
  }
  for (int n = 0; n <= 8; ++n) {
    CHECK(sizes[n] == qt::free_ball_closed_form(n));
    CHECK(sizes[n] == qt::free_ball_enumerated(n));
  }
}

TEST_CASE("ball entries carry reproducing minimal witnesses") {
  const MetricConfig cfg = config_for(0.01);
  const GroupSpec aug = sanov_spec().augmented();
  const auto ball = ball_enumerate(sanov_spec(), 5, cfg);
  for (std::size_t i = 0; i < ball.size(); i += 7) {
    const auto& entry = ball[i];
    MoebiusElement prod;
    for (const std::uint16_t g : entry.witness) {
      prod = prod * aug.generators[g].element;
    }
    CHECK(rho(prod, entry.element) <= 1e-9);
    CHECK(entry.witness.size() == static_cast<std::size_t>(entry.word_length));
  }
}

TEST_CASE("trivial spec has a one-point ball") {
  const auto ball = ball_enumerate(trivial_spec(), 6, config_for(0.01));
  CHECK(ball.size() == 1);
}

TEST_CASE("ball ceiling is enforced") {
  MetricConfig cfg = config_for(0.01);
  cfg.max_elements = 10;
  CHECK_THROWS_AS(ball_enumerate(sanov_spec(), 3, cfg), ResourceLimitError);
}

TEST_CASE("dedupe surfaces ambiguity instead of guessing") {
  const MoebiusElement base = MoebiusElement::axis_translation(0.5);
  const MoebiusElement nudged = base * MoebiusElement(1.0 + 3e-9, 0, 0, 1.0);
  REQUIRE(rho(base, nudged) > kEqualTol);
  REQUIRE(rho(base, nudged) <= kAmbiguityTol);
  GroupSpec spec{{{"g", base}, {"h", nudged}}, false};
  CHECK_THROWS_AS(ball_enumerate(spec, 1, config_for(0.01)), AmbiguityError);
}

TEST_CASE("semilocal growth: cyclic and trivial groups stay at 1") {
  const auto table = semilocal_growth(cyclic_spec(), 12, config_for(0.01));
  REQUIRE(table.rows.size() == 13);
  for (const auto& row : table.rows) {
    CHECK(row.semilocal == 1);
    CHECK(row.ball_size == static_cast<std::uint64_t>(2 * row.n + 1));
  }
  const auto trivial = semilocal_growth(trivial_spec(), 6, config_for(0.01));
  for (const auto& row : trivial.rows) {
    CHECK(row.ball_size == 1);
    CHECK(row.semilocal == 1);
  }
}

TEST_CASE("Carriere local growth is strictly smaller when prefixes leave N") {
  // One generator: a rotation far from the identity whose 11th power is
  // small. The 11th power counts semilocally but has no small-prefix word.
  const double theta = 2.0 * qt::kPi * 5.0 / 11.0 + 0.001;
  GroupSpec spec{{{"g", MoebiusElement::rotation(HPoint(0, 1), theta)}}, false};
  MetricConfig cfg = config_for(0.05);
  cfg.variant = GrowthVariant::CarriereLocal;
  const auto table = semilocal_growth(spec, 12, cfg);
  const auto& last = table.rows.back();
  REQUIRE(last.local.has_value());
  CHECK(last.semilocal == 3);  // e and the two 11th powers
  CHECK(*last.local == 1);
  for (const auto& row : table.rows) {
    REQUIRE(row.local.has_value());
    CHECK(*row.local <= row.semilocal);
    CHECK(row.semilocal <= row.ball_size);
  }
}

TEST_CASE("semilocal counts of two small elliptics increase over n = 4, 8, 12") {
  // Angles large enough that deep products stay numerically separated; the
  // elements of N_0.1 at these depths are the near-cancelling words.
  GroupSpec spec{{{"p", MoebiusElement::rotation(HPoint(0, 1), 0.29)},
                  {"q", MoebiusElement::rotation(HPoint(0.4, 1), 0.37)}},
                 false};
  const auto table = semilocal_growth(spec, 12, config_for(0.1));
  const auto count = [&](int n) { return table.rows[n].semilocal; };
  CHECK(count(4) < count(8));
  CHECK(count(8) < count(12));
}

TEST_CASE("classify_elementary") {
  const GroupSpec same_center{
      {{"r1", MoebiusElement::rotation(HPoint(0.2, 1.5), 0.7)},
       {"r2", MoebiusElement::rotation(HPoint(0.2, 1.5), 1.3)}},
      false};
  const auto a = classify_elementary(same_center);
  CHECK(a.common_interior_fixed);
  CHECK(a.elementary);

  const GroupSpec diag{{{"t", MoebiusElement(2, 0, 0, 0.5)},
                        {"u", MoebiusElement(3, 0, 0, 1.0 / 3.0)}},
                       false};
  const auto b = classify_elementary(diag);
  CHECK(b.invariant_axis);
  CHECK(b.common_boundary_fixed);  // 0 and infinity are each fixed by both
  CHECK(b.elementary);

  const auto c = classify_elementary(sanov_spec());
  CHECK_FALSE(c.common_interior_fixed);
  CHECK_FALSE(c.common_boundary_fixed);
  CHECK_FALSE(c.invariant_axis);
  CHECK_FALSE(c.elementary);

  // Two half-turns about distinct centers preserve the geodesic through the
  // centers by swapping its endpoints.
  const GroupSpec half_turns{
      {{"h1", MoebiusElement::rotation(HPoint(0, 1), qt::kPi)},
       {"h2", MoebiusElement::rotation(HPoint(1, 1), qt::kPi)}},
      false};
  const auto d = classify_elementary(half_turns);
  CHECK(d.invariant_axis);
  CHECK(d.elementary);
}

TEST_CASE("find_infinite_order_elliptic") {
  const MetricConfig cfg = config_for(0.05);
  GroupSpec with_irrational{
      {{"r", MoebiusElement::rotation(HPoint(0, 1), 1.0)}}, false};
  const auto found = find_infinite_order_elliptic(with_irrational, 1, 1e-5, cfg);
  REQUIRE(found.has_value());
  CHECK(found->entry.word_length == 1);
  CHECK(found->rotation_angle == doctest::Approx(1.0));
  CHECK(found->heuristically_infinite_order);
  CHECK(found->min_rational_distance > 1e-5);
  CHECK(found->min_rational_distance == doctest::Approx(0.000128).epsilon(0.05));

  GroupSpec quarter{{{"r", MoebiusElement::rotation(HPoint(0, 1), qt::kPi / 2)}},
                    false};
  CHECK_FALSE(find_infinite_order_elliptic(quarter, 3, 1e-5, cfg).has_value());

  CHECK_FALSE(find_infinite_order_elliptic(sanov_spec(), 3, 1e-5, cfg).has_value());
}

TEST_CASE("zassenhaus_check") {
  const auto report = zassenhaus_check(0.05, 1000, 4711);
  CHECK(report.pass);
  CHECK(report.max_commutator_displacement < 0.05);
  CHECK(report.max_commutator_displacement > 0.0);
  CHECK(report.samples == 1000);

  // Far from the identity the commutator contraction fails.
  const auto wide = zassenhaus_check(2.0, 1000, 4711);
  CHECK_FALSE(wide.pass);

  CHECK_THROWS_AS(zassenhaus_check(0.0, 10, 1), ValidationError);
}

TEST_CASE("build_free_pair constructs a certified small free pair") {
  const MoebiusElement alpha = MoebiusElement::rotation(HPoint(0, 1), 1.0);
  const MoebiusElement h = MoebiusElement(2, 0, 0, 0.5);
  const auto cert = build_free_pair(alpha, h, 0.05, 8);
  CHECK(cert.eigenvector_pairing_ok);
  CHECK_FALSE(cert.weak);
  CHECK(cert.displacement_a <= 0.05);
  CHECK(cert.displacement_b <= 0.05);
  CHECK(cert.m_exponent >= 1);
  CHECK(cert.k_exponent >= 1);
  CHECK(cert.l_exponent >= 1);
  CHECK(hyp2::classify(cert.a).tag == IsomTag::Elliptic);
  CHECK(hyp2::classify(cert.b).tag == IsomTag::Elliptic);

  SUBCASE("a commuting conjugator is refused") {
    const MoebiusElement rot = MoebiusElement::rotation(HPoint(0, 1), 0.7);
    CHECK_THROWS_AS(build_free_pair(alpha, rot, 0.05, 8), FreePairError);
  }
  SUBCASE("rational angles are refused") {
    const MoebiusElement quarter = MoebiusElement::rotation(HPoint(0, 1), qt::kPi / 2);
    CHECK_THROWS_AS(build_free_pair(quarter, h, 0.05, 8), FreePairError);
  }
  SUBCASE("zero-length check yields a weak certificate") {
    const auto weak = build_free_pair(alpha, h, 0.05, 0);
    CHECK(weak.weak);
    CHECK(weak.eigenvector_pairing_ok);
  }
}

TEST_CASE("certify_free_pair refuses pairs with shared eigenvectors") {
  const MoebiusElement a = MoebiusElement::rotation(HPoint(0, 1), 0.011);
  const MoebiusElement b = MoebiusElement::rotation(HPoint(0, 1), 0.017);
  CHECK_THROWS_AS(certify_free_pair(a, b, 0.05, 4), FreePairError);
}

TEST_CASE("commutator tower growth meets the doubly exponential floors") {
  const MoebiusElement alpha = MoebiusElement::rotation(HPoint(0, 1), 1.0);
  const MoebiusElement h = MoebiusElement(2, 0, 0, 0.5);
  const auto cert = build_free_pair(alpha, h, 0.05, 8);
  const auto tower = commutator_tower_growth(cert, 2);
  REQUIRE(tower.rows.size() == 3);
  CHECK_FALSE(tower.dichotomy_violation);
  CHECK(tower.rows[0].images_in_neighborhood == 4);
  CHECK(tower.rows[1].images_in_neighborhood >= 4);
  CHECK(tower.rows[1].distinct_images == 8);
  CHECK(tower.rows[2].images_in_neighborhood >= 16);
  CHECK(tower.rows[2].distinct_images == 48);
  CHECK(tower.rows[0].floor_pow == 2);
  CHECK(tower.rows[1].floor_pow == 4);
  CHECK(tower.rows[2].floor_pow == 16);

  CHECK_THROWS_AS(commutator_tower_growth(cert, 3), ResourceLimitError);

  SUBCASE("a fake certificate is reported, not silently passed") {
    FreePairCertificate fake;
    fake.a = MoebiusElement::rotation(HPoint(0, 1), 0.02);
    fake.b = MoebiusElement::rotation(HPoint(0, 1), 0.03);  // commutes with a
    fake.epsilon0 = 0.05;
    const auto broken = commutator_tower_growth(fake, 1);
    CHECK(broken.dichotomy_violation);
    CHECK_FALSE(broken.finding.empty());
    CHECK(broken.rows[1].shortfall);
  }
}

TEST_CASE("discreteness verdicts") {
  const auto sanov = discreteness_verdict(sanov_spec(), 10, config_for(0.01));
  CHECK(sanov.verdict == Verdict::DiscreteLikely);
  CHECK(std::abs(sanov.A) <= 1e-12);
  CHECK(std::abs(sanov.B - 1.0) <= 1e-12);

  const auto cyc = discreteness_verdict(cyclic_spec(), 10, config_for(0.01));
  CHECK(cyc.verdict == Verdict::DiscreteLikely);

  const auto triv = discreteness_verdict(trivial_spec(), 6, config_for(0.01));
  CHECK(triv.verdict == Verdict::DiscreteLikely);

  // Tower evidence from a certified free pair of small elliptic conjugates.
  const auto cert = build_free_pair(MoebiusElement::rotation(HPoint(0, 1), 1.0),
                                    MoebiusElement(2, 0, 0, 0.5), 0.05, 8);
  const auto tower = commutator_tower_growth(cert, 2);
  const auto evidence = tower_growth_table(cert, tower);
  REQUIRE(evidence.rows.size() == 3);
  CHECK(evidence.rows[0].n == 1);
  CHECK(evidence.rows[1].n == 4);
  CHECK(evidence.rows[2].n == 16);
  CHECK(evidence.lower_bound_evidence);
  const auto verdict = discreteness_verdict(evidence);
  CHECK(verdict.verdict == Verdict::NonDiscreteLikely);
  CHECK(verdict.floor_exceedances >= 2);
}

TEST_CASE("triple orbit map") {
  using hyp2::BoundaryPoint;
  using hyp2::IdealTriple;
  const IdealTriple base(BoundaryPoint::at(-1), BoundaryPoint::at(1),
                         BoundaryPoint::infinity());

  std::vector<BallEntry> entries;
  entries.push_back({MoebiusElement(), 0, {}});
  entries.push_back({MoebiusElement(2, 0, 0, 0.5), 1, {0}});
  const auto points = triple_orbit_map(base, entries);
  REQUIRE(points.size() == 2);
  CHECK(points[0].second.x == doctest::Approx(0.0));
  CHECK(points[0].second.y == doctest::Approx(1.0));
  CHECK(points[1].second.x == doctest::Approx(0.0));
  CHECK(points[1].second.y == doctest::Approx(4.0));

  SUBCASE("equivariance over random ball pairs") {
    const auto ball = ball_enumerate(sanov_spec(), 2, config_for(0.01));
    const auto orbit = triple_orbit_map(base, ball);
    Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
      const auto& a = ball[rng.next() % ball.size()];
      const auto& b = ball[rng.next() % ball.size()];
      std::vector<BallEntry> pair;
      pair.push_back({a.element * b.element, 0, {}});
      pair.push_back({b.element, 0, {}});
      const auto mapped = triple_orbit_map(base, pair);
      const HPoint via_product = mapped[0].second;
      const HPoint via_action = hyp2::apply(a.element, mapped[1].second);
      CHECK(hyp2::distance(via_product, via_action) <= 1e-8);
    }
  }
}
