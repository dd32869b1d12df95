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

#include <set>

#include "qihyp/freewords.hpp"
#include "qihyp/rng.hpp"

using namespace qihyp;
using namespace qihyp::freewords;

namespace {

FreeWord random_word(Rng& rng, int len) {
  FreeWord w;
  for (int i = 0; i < len; ++i) {
    w.push_back(static_cast<Letter>(rng.next() % 4));
  }
  return w;
}

}  // namespace

TEST_CASE("reduce") {
  CHECK(reduce(parse_word("abBA")).empty());
  CHECK(reduce(parse_word("abAB")) == parse_word("abAB"));
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const FreeWord w = random_word(rng, static_cast<int>(rng.next() % 40));
    const FreeWord once = reduce(w);
    CHECK(reduce(once) == once);
    CHECK(once.size() <= w.size());
    CHECK(is_reduced(once));
  }
}

TEST_CASE("block_reduce_step") {
  // A block followed by its formal inverse cancels.
  const FreeWord x = parse_word("abAB");
  FreeWord w = x;
  const FreeWord xinv = inverse_word(x);
  w.insert(w.end(), xinv.begin(), xinv.end());
  CHECK(block_reduce_step(w, 4).empty());

  // [a,b][a,b^-1]: no inverse adjacency, unchanged.
  CHECK(block_reduce_step(parse_word("abABaBAb"), 4) == parse_word("abABaBAb"));

  CHECK_THROWS_AS(block_reduce_step(parse_word("aba"), 2), ValidationError);

  SUBCASE("single pass does not look back") {
    // Blocks: P Q Q^-1 P^-1 with P = ab, Q = aB: one pass cancels only the
    // middle pair.
    const FreeWord word = parse_word("abaBbABA");
    const FreeWord after = block_reduce_step(word, 2);
    CHECK(after == parse_word("abBA"));
  }
}

TEST_CASE("levels: exact counts and shapes") {
  const auto w0 = gen_comm_level(0);
  REQUIRE(w0.words.size() == 4);
  CHECK(w0.words[0] == parse_word("a"));
  CHECK(w0.words[1] == parse_word("b"));
  CHECK(w0.words[2] == parse_word("A"));
  CHECK(w0.words[3] == parse_word("B"));

  const auto w1 = gen_comm_level(1);
  CHECK(w1.words.size() == 8);
  const auto w2 = gen_comm_level(2);
  CHECK(w2.words.size() == 48);

  for (const auto& level : {w0, w1, w2}) {
    std::size_t expected = 1;
    for (int i = 0; i < level.level; ++i) expected *= 4;
    std::set<FreeWord> distinct;
    for (const auto& w : level.words) {
      CHECK(w.size() == expected);
      CHECK(w != inverse_word(w));
      distinct.insert(w);
    }
    CHECK(distinct.size() == level.words.size());
  }

  CHECK_THROWS_AS(gen_comm_level(4), ResourceLimitError);
  CHECK_THROWS_AS(gen_comm_level(-1), ValidationError);
}

TEST_CASE("count_levels matches the recurrence and the floors") {
  const auto rows = count_levels(3);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].count == 4);
  CHECK(rows[1].count == 8);
  CHECK(rows[1].floor_pow == 4);
  CHECK(rows[1].strong_floor == 8);
  CHECK(rows[2].count == 48);
  CHECK(rows[2].floor_pow == 16);
  CHECK(rows[2].strong_floor == 32);
  CHECK(rows[3].count == 2208);
  CHECK(rows[3].floor_pow == 256);
  CHECK(rows[3].strong_floor == 512);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].count == rows[i - 1].count * (rows[i - 1].count - 2));
    CHECK(rows[i].count >= rows[i].floor_pow);
    CHECK(rows[i].count >= rows[i].strong_floor);
  }
}

TEST_CASE("block reduction chain equals full reduction on level 2") {
  const auto w2 = gen_comm_level(2);
  for (const auto& w : w2.words) {
    const FreeWord chain = block_reduce_step(block_reduce_step(w, 4), 1);
    CHECK(chain == reduce(w));
  }
}

TEST_CASE("reconstruct: fixed cases") {
  const FreeWord ab = parse_word("abAB");
  const auto res = reconstruct(reduce(ab));
  REQUIRE(std::holds_alternative<Reconstruction>(res));
  CHECK(std::get<Reconstruction>(res).level == 1);
  CHECK(std::get<Reconstruction>(res).word == ab);

  const auto letter = reconstruct(parse_word("a"));
  REQUIRE(std::holds_alternative<Reconstruction>(letter));
  CHECK(std::get<Reconstruction>(letter).level == 0);

  const auto not_in = reconstruct(parse_word("ab"));
  REQUIRE(std::holds_alternative<NotInW>(not_in));
  CHECK(std::get<NotInW>(not_in).failed_level == 1);

  CHECK_THROWS_AS(reconstruct(parse_word("aA")), ValidationError);

  const auto empty = reconstruct(FreeWord{});
  CHECK(std::holds_alternative<NotInW>(empty));
}

TEST_CASE("reconstruct inverts reduce exhaustively through level 2") {
  for (int i = 0; i <= 2; ++i) {
    const auto level = gen_comm_level(i);
    for (const auto& w : level.words) {
      const auto res = reconstruct(reduce(w));
      REQUIRE(std::holds_alternative<Reconstruction>(res));
      CHECK(std::get<Reconstruction>(res).level == i);
      CHECK(std::get<Reconstruction>(res).word == w);
    }
  }
}

TEST_CASE("reconstruct inverts reduce on 500 level-3 samples") {
  const auto level = gen_comm_level(3);
  Rng rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    const FreeWord& w = level.words[rng.next() % level.words.size()];
    const auto res = reconstruct(reduce(w));
    REQUIRE(std::holds_alternative<Reconstruction>(res));
    CHECK(std::get<Reconstruction>(res).level == 3);
    CHECK(std::get<Reconstruction>(res).word == w);
  }
}

TEST_CASE("reconstruct rejects random reduced words") {
  Rng rng(53);
  int rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const FreeWord w = reduce(random_word(rng, 16));
    if (w.size() < 2) continue;
    const auto res = reconstruct(w);
    if (std::holds_alternative<NotInW>(res)) ++rejected;
  }
  // Hitting a genuine image by chance is astronomically unlikely.
  CHECK(rejected >= 195);
}

TEST_CASE("injectivity of the reduced images") {
  CHECK(verify_injectivity(0));
  CHECK(verify_injectivity(1));
  CHECK(verify_injectivity(2));
}

TEST_CASE("reduced lengths never exceed 4^i and the dyadic floor holds") {
  for (int i = 0; i <= 2; ++i) {
    const auto level = gen_comm_level(i);
    std::size_t cap = 1;
    for (int p = 0; p < i; ++p) cap *= 4;
    std::set<FreeWord> images;
    for (const auto& w : level.words) {
      const FreeWord r = reduce(w);
      CHECK(r.size() <= cap);
      images.insert(r);
    }
    // Distinct reduced images of length <= 4^i at least 2^{2^i}.
    CHECK(images.size() >= (std::size_t{1} << (std::size_t{1} << i)));
    CHECK(static_cast<double>(images.size()) >=
          growth_floor(static_cast<double>(cap)));
  }
}

TEST_CASE("growth floor") {
  CHECK(growth_floor(0) == doctest::Approx(1.0));
  CHECK(growth_floor(16) == doctest::Approx(2.0));
  CHECK(growth_floor(64) == doctest::Approx(4.0));
  CHECK_THROWS_AS(growth_floor(-1.0), ValidationError);
}

TEST_CASE("word rendering round-trips") {
  Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    const FreeWord w = random_word(rng, 12);
    CHECK(parse_word(to_string(w)) == w);
  }
  CHECK_THROWS_AS(parse_word("xyz"), ValidationError);
}
