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

#include "qihyp/freewords.hpp"

#include <cmath>
#include <set>

namespace qihyp::freewords {

Letter inverse(Letter l) {
  switch (l) {
    case Letter::A:
      return Letter::AInv;
    case Letter::B:
      return Letter::BInv;
    case Letter::AInv:
      return Letter::A;
    case Letter::BInv:
      return Letter::B;
  }
  throw ValidationError("invalid letter");
}

FreeWord inverse_word(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_reduced(const FreeWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inverse(w[i - 1])) return false;
  }
  return true;
}

FreeWord block_reduce_step(const FreeWord& w, std::size_t block_len) {
  if (block_len == 0 || w.size() % block_len != 0) {
    throw ValidationError("block_reduce_step requires length divisible by block_len");
  }
  const std::size_t blocks = w.size() / block_len;
  auto is_inverse_pair = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < block_len; ++k) {
      if (w[j * block_len + k] != inverse(w[i * block_len + (block_len - 1 - k)])) {
        return false;
      }
    }
    return true;
  };
  FreeWord out;
  out.reserve(w.size());
  std::size_t i = 0;
  while (i < blocks) {
    if (i + 1 < blocks && is_inverse_pair(i, i + 1)) {
      i += 2;  // cancel both; resume at the block after the pair
    } else {
      out.insert(out.end(), w.begin() + i * block_len,
                 w.begin() + (i + 1) * block_len);
      ++i;
    }
  }
  return out;
}

namespace {

std::vector<FreeWord> level_zero() {
  return {{Letter::A}, {Letter::B}, {Letter::AInv}, {Letter::BInv}};
}

std::vector<FreeWord> next_level(const std::vector<FreeWord>& prev) {
  std::vector<FreeWord> out;
  out.reserve(prev.size() * (prev.size() - 2));
  for (const FreeWord& x : prev) {
    const FreeWord xinv = inverse_word(x);
    for (const FreeWord& y : prev) {
      if (y == x || y == xinv) continue;
      FreeWord comm;
      comm.reserve(4 * x.size());
      comm.insert(comm.end(), x.begin(), x.end());
      comm.insert(comm.end(), y.begin(), y.end());
      comm.insert(comm.end(), xinv.begin(), xinv.end());
      const FreeWord yinv = inverse_word(y);
      comm.insert(comm.end(), yinv.begin(), yinv.end());
      out.push_back(std::move(comm));
    }
  }
  return out;
}

}  // namespace

CommLevelSet gen_comm_level(int i, int ceiling) {
  if (i < 0) throw ValidationError("gen_comm_level requires i >= 0");
  if (i > ceiling) {
    throw ResourceLimitError("level ceiling (" + std::to_string(ceiling) +
                             ") exceeded by request for level " +
                             std::to_string(i));
  }
  std::vector<FreeWord> words = level_zero();
  for (int level = 1; level <= i; ++level) words = next_level(words);
  return {i, std::move(words)};
}

std::vector<LevelCountRow> count_levels(int i_max, int ceiling) {
  if (i_max < 0) throw ValidationError("count_levels requires i_max >= 0");
  if (i_max > ceiling) {
    throw ResourceLimitError("level ceiling (" + std::to_string(ceiling) +
                             ") exceeded by request for level " +
                             std::to_string(i_max));
  }
  std::vector<LevelCountRow> rows;
  std::vector<FreeWord> words = level_zero();
  for (int i = 0; i <= i_max; ++i) {
    if (i > 0) words = next_level(words);
    LevelCountRow row;
    row.level = i;
    row.count = words.size();
    row.floor_pow = std::uint64_t{1} << (std::uint64_t{1} << i);
    row.strong_floor = row.floor_pow << 1;
    rows.push_back(row);
  }
  return rows;
}

ReconstructResult reconstruct(const FreeWord& reduced, int ceiling) {
  if (!is_reduced(reduced)) {
    throw ValidationError("reconstruct requires a reduced word");
  }
  if (reduced.empty()) return NotInW{0, "empty word"};
  std::vector<FreeWord> blocks;
  blocks.reserve(reduced.size());
  for (Letter l : reduced) blocks.push_back({l});
  if (blocks.size() == 1) return Reconstruction{0, blocks[0]};

  int level = 0;
  while (blocks.size() > 1) {
    ++level;
    if (level > ceiling) {
      return NotInW{level, "level ceiling exceeded during expansion"};
    }
    std::vector<FreeWord> groups;
    std::size_t pos = 0;
    while (pos < blocks.size()) {
      if (blocks.size() - pos < 3) {
        return NotInW{level, "incomplete block group"};
      }
      const FreeWord x = blocks[pos];
      const FreeWord y = blocks[pos + 1];
      const FreeWord xinv = inverse_word(x);
      if (y == x) return NotInW{level, "commutator arguments equal"};
      if (y == xinv) return NotInW{level, "commutator arguments inverse"};
      if (blocks[pos + 2] != xinv) {
        return NotInW{level, "third block is not the inverse of the first"};
      }
      const FreeWord yinv = inverse_word(y);
      if (blocks.size() - pos == 3) {
        // A closing block can only vanish against the next group's opening
        // block; there is no next group here.
        return NotInW{level, "word ends inside a block group"};
      }
      if (blocks[pos + 3] != yinv) {
        // The junction pair y^-1 . y cancelled during reduction; restore it.
        blocks.insert(blocks.begin() + pos + 3, {yinv, y});
      }
      FreeWord group;
      group.reserve(4 * x.size());
      group.insert(group.end(), x.begin(), x.end());
      group.insert(group.end(), y.begin(), y.end());
      group.insert(group.end(), xinv.begin(), xinv.end());
      group.insert(group.end(), yinv.begin(), yinv.end());
      groups.push_back(std::move(group));
      pos += 4;
    }
    blocks = std::move(groups);
  }
  if (reduce(blocks[0]) != reduced) {
    return NotInW{level, "expansion does not reduce back to the input"};
  }
  return Reconstruction{level, blocks[0]};
}

bool verify_injectivity(int i, int ceiling) {
  if (i < 0) throw ValidationError("verify_injectivity requires i >= 0");
  if (i > ceiling) {
    throw ResourceLimitError("level ceiling (" + std::to_string(ceiling) +
                             ") exceeded by request for level " +
                             std::to_string(i));
  }
  std::set<FreeWord> seen;  // reduced forms across all levels <= i
  std::vector<FreeWord> words = level_zero();
  for (int level = 0; level <= i; ++level) {
    if (level > 0) words = next_level(words);
    for (const FreeWord& w : words) {
      if (!seen.insert(reduce(w)).second) return false;
    }
  }
  return true;
}

double growth_floor(double n) {
  if (!(n >= 0.0)) throw ValidationError("growth_floor requires n >= 0");
  return std::exp2(std::sqrt(n) / 4.0);
}

std::string to_string(const FreeWord& w) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    switch (l) {
      case Letter::A:
        out += 'a';
        break;
      case Letter::B:
        out += 'b';
        break;
      case Letter::AInv:
        out += 'A';
        break;
      case Letter::BInv:
        out += 'B';
        break;
    }
  }
  return out;
}

FreeWord parse_word(std::string_view text) {
  FreeWord out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'a':
        out.push_back(Letter::A);
        break;
      case 'b':
        out.push_back(Letter::B);
        break;
      case 'A':
        out.push_back(Letter::AInv);
        break;
      case 'B':
        out.push_back(Letter::BInv);
        break;
      case ' ':
        break;
      default:
        throw ValidationError(std::string("invalid word character '") + c + "'");
    }
  }
  return out;
}

}  // namespace qihyp::freewords
