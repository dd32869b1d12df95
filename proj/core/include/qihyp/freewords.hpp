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

#ifndef QIHYP_FREEWORDS_HPP
#define QIHYP_FREEWORDS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qihyp/errors.hpp"

// Words over {a, b, a^-1, b^-1}, the iterated-commutator families W_i, the
// aligned-block cancellation pass that reduces them, and the canonical
// reconstruction that inverts it. Level i words have length exactly 4^i and
// distinct words stay distinct in the free group, which is what makes the
// level sizes c_i = c_{i-1}(c_{i-1} - 2) >= 2^{2^i} a usable growth floor.
namespace qihyp::freewords {

/// Alphabet order fixes the deterministic enumeration order: a < b < a' < b'.
enum class Letter : std::uint8_t { A = 0, B = 1, AInv = 2, BInv = 3 };

Letter inverse(Letter l);

using FreeWord = std::vector<Letter>;

/// Formal inverse: reversed word with every letter inverted.
FreeWord inverse_word(const FreeWord& w);

/// Unique reduced form (all adjacent inverse pairs cancelled). Idempotent.
FreeWord reduce(const FreeWord& w);

bool is_reduced(const FreeWord& w);

/// One left-to-right pass at block granularity: whenever a block is
/// immediately followed by its formal inverse, both are cancelled and the
/// scan resumes at the block after the cancelled pair (no lookback). The
/// word length must be divisible by block_len.
FreeWord block_reduce_step(const FreeWord& w, std::size_t block_len);

/// The level-i commutator family, in deterministic enumeration order.
struct CommLevelSet {
  int level = 0;
  std::vector<FreeWord> words;
};

/// Levels above this need gen_comm_level's ceiling raised explicitly; level 4
/// already holds ~4.9M words of length 256.
inline constexpr int kDefaultLevelCeiling = 3;

/// W_0 = {a, b, a', b'}; W_i = {x y x^-1 y^-1 : x, y in W_{i-1}, x != y,
/// x != y^-1}, enumerated lexicographically in (x, y). Throws
/// ResourceLimitError when i exceeds the ceiling.
CommLevelSet gen_comm_level(int i, int ceiling = kDefaultLevelCeiling);

struct LevelCountRow {
  int level = 0;
  std::uint64_t count = 0;          // c_i from actual enumeration
  std::uint64_t floor_pow = 0;      // 2^{2^i}
  std::uint64_t strong_floor = 0;   // 2^{2^i + 1}
};

/// Level sizes with the two growth floors, for i = 0..i_max.
std::vector<LevelCountRow> count_levels(int i_max,
                                        int ceiling = kDefaultLevelCeiling);

struct Reconstruction {
  int level = 0;
  FreeWord word;
};

struct NotInW {
  int failed_level = 0;
  std::string reason;
};

using ReconstructResult = std::variant<Reconstruction, NotInW>;

/// Inverts reduction on the union of the W_i: expands the reduced input back
/// through the block structure one level at a time (re-inserting the single
/// letter pair that can cancel at each block junction), and returns the
/// unique originating word and its level. Inputs that are not the reduction
/// of any W word come back as NotInW with the level where expansion failed.
/// Throws ValidationError for unreduced input.
ReconstructResult reconstruct(const FreeWord& reduced,
                              int ceiling = kDefaultLevelCeiling);

/// True iff the c_i reduced forms of W_i are pairwise distinct and distinct
/// from every reduced form of the lower levels.
bool verify_injectivity(int i, int ceiling = kDefaultLevelCeiling);

/// 2^{sqrt(n)/4}, the growth floor the commutator counts certify.
double growth_floor(double n);

/// Compact rendering: 'a'/'b' for the generators, 'A'/'B' for their inverses.
std::string to_string(const FreeWord& w);
FreeWord parse_word(std::string_view text);

}  // namespace qihyp::freewords

#endif  // QIHYP_FREEWORDS_HPP
