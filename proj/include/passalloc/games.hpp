// Copyright 2026 The passalloc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PASSALLOC_GAMES_HPP
#define PASSALLOC_GAMES_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"

namespace passalloc {

/// A transferable-utility game over museums 1..players, materialized as a
/// dense table: values[mask] is v(S) for the coalition whose members are the
/// set bits of mask (bit i-1 stands for museum i).
struct CharacteristicFunction {
  int players = 0;
  std::vector<Rat> values;

  const Rat& value(std::uint32_t coalition) const { return values.at(coalition); }
  std::uint32_t full_mask() const { return (std::uint32_t(1) << players) - 1; }
};

/// The game of a problem: v(S) is the revenue from all pass holders whose
/// whole visited set lies inside S. The table has 2^m entries, so m is
/// capped by `enumeration_bound`.
inline CharacteristicFunction build_game(const Problem& p, int enumeration_bound = 12) {
  require_valid(p);
  if (p.museums > enumeration_bound)
    throw std::invalid_argument("build_game: " + std::to_string(p.museums) +
                                " museums exceed the enumeration bound of " +
                                std::to_string(enumeration_bound));
  ProblemIndex ix(p);
  CharacteristicFunction v;
  v.players = p.museums;
  v.values.assign(std::size_t(1) << p.museums, Rat(0));

  const std::uint32_t full = v.full_mask();
  for (const auto& [id, pass] : p.passes) {
    for (std::size_t c = 0; c < pass.holders.size(); ++c) {
      std::uint32_t visited = 0;
      for (int i : ix.visited(id, static_cast<int>(c))) visited |= std::uint32_t(1) << (i - 1);
      // add the fee to every superset of the visited set
      const std::uint32_t complement = full & ~visited;
      std::uint32_t extra = complement;
      for (;;) {
        v.values[visited | extra] += pass.price;
        if (extra == 0) break;
        extra = (extra - 1) & complement;
      }
    }
  }
  return v;
}

namespace detail {
inline std::vector<mpz_class> factorial_table(int n) {
  std::vector<mpz_class> fact(n + 1);
  fact[0] = 1;
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
  return fact;
}
}  // namespace detail

/// Exact Shapley value via the marginal-contribution coefficient formula.
/// Payouts sum to v(M).
inline std::vector<Rat> shapley_value(const CharacteristicFunction& v) {
  const int n = v.players;
  if (n < 1 || n > 25) throw std::invalid_argument("shapley_value: unsupported player count");
  const auto fact = detail::factorial_table(n);
  const Rat n_fact{fact[n]};

  std::vector<Rat> phi(n, Rat(0));
  const std::uint32_t full = v.full_mask();
  for (int i = 1; i <= n; ++i) {
    const std::uint32_t bit = std::uint32_t(1) << (i - 1);
    const std::uint32_t others = full & ~bit;
    Rat sum(0);
    std::uint32_t coalition = others;
    for (;;) {
      const int size = std::popcount(coalition);
      sum += Rat(fact[size] * fact[n - size - 1]) * (v.value(coalition | bit) - v.value(coalition));
      if (coalition == 0) break;
      coalition = (coalition - 1) & others;
    }
    phi[i - 1] = sum / n_fact;
  }
  return phi;
}

/// Exact Owen value of the game with a priori unions: the two-level
/// coefficient formula sums over coalitions of other unions and
/// sub-coalitions within the player's own union. Payouts sum to v(M).
inline std::vector<Rat> owen_value(const CharacteristicFunction& v,
                                   const std::vector<std::vector<int>>& partition) {
  const int n = v.players;
  if (n < 1 || n > 25) throw std::invalid_argument("owen_value: unsupported player count");
  const int s = static_cast<int>(partition.size());
  std::vector<std::uint32_t> block_mask(s, 0);
  std::uint32_t covered = 0;
  for (int k = 0; k < s; ++k) {
    for (int i : partition[k]) {
      if (i < 1 || i > n) throw std::invalid_argument("owen_value: partition names player " +
                                                      std::to_string(i));
      const std::uint32_t bit = std::uint32_t(1) << (i - 1);
      if (covered & bit)
        throw std::invalid_argument("owen_value: partition repeats player " + std::to_string(i));
      block_mask[k] |= bit;
      covered |= bit;
    }
    if (block_mask[k] == 0) throw std::invalid_argument("owen_value: empty partition block");
  }
  if (covered != v.full_mask())
    throw std::invalid_argument("owen_value: partition must cover every player");

  const int max_fact = std::max(n, s);
  const auto fact = detail::factorial_table(max_fact);

  std::vector<Rat> payout(n, Rat(0));
  for (int k = 0; k < s; ++k) {
    const int block_size = std::popcount(block_mask[k]);
    const Rat outer_den{fact[s]};
    const Rat inner_den{fact[block_size]};

    // masks of the other unions, enumerated as subsets of an index set
    std::vector<std::uint32_t> other_blocks;
    for (int l = 0; l < s; ++l)
      if (l != k) other_blocks.push_back(block_mask[l]);

    for (int i : partition[k]) {
      const std::uint32_t bit = std::uint32_t(1) << (i - 1);
      const std::uint32_t own_others = block_mask[k] & ~bit;
      Rat total(0);

      const std::uint32_t union_subsets = std::uint32_t(1) << other_blocks.size();
      for (std::uint32_t q = 0; q < union_subsets; ++q) {
        std::uint32_t union_mask = 0;
        for (std::size_t l = 0; l < other_blocks.size(); ++l)
          if (q & (std::uint32_t(1) << l)) union_mask |= other_blocks[l];
        const int q_size = std::popcount(q);
        const Rat outer = Rat(fact[q_size] * fact[s - q_size - 1]) / outer_den;

        std::uint32_t inner = own_others;
        for (;;) {
          const int t_size = std::popcount(inner);
          const Rat coeff = outer * Rat(fact[t_size] * fact[block_size - t_size - 1]) / inner_den;
          const std::uint32_t base = union_mask | inner;
          total += coeff * (v.value(base | bit) - v.value(base));
          if (inner == 0) break;
          inner = (inner - 1) & own_others;
        }
      }
      payout[i - 1] = total;
    }
  }
  return payout;
}

}  // namespace passalloc

#endif  // PASSALLOC_GAMES_HPP
