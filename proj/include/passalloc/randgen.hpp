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

#ifndef PASSALLOC_RANDGEN_HPP
#define PASSALLOC_RANDGEN_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"

namespace passalloc {

/// SplitMix64: the library's pseudo-random generator. The algorithm is fixed
/// so that the same seed yields the same stream on every platform; children
/// derived with split() are independent deterministic streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, bound) via rejection: unbiased and portable.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform draw in [lo, hi], inclusive.
  int range(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("range: empty interval");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability num/den.
  bool chance(std::uint32_t num, std::uint32_t den) { return below(den) < num; }

  SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dULL); }

 private:
  std::uint64_t state_;
};

/// Settings for the seeded instance generator. Ranges are inclusive; the
/// density is the probability num/den that a matrix cell is a visit (columns
/// are repaired afterwards so every holder visits at least one museum).
struct GenConfig {
  int museums_min = 2;
  int museums_max = 6;
  int consortia_min = 1;
  int consortia_max = 3;
  int general_holders_min = 0;
  int general_holders_max = 4;
  int consortium_holders_min = 0;
  int consortium_holders_max = 3;
  int individual_holders_min = 0;
  int individual_holders_max = 2;
  int price_numerator_max = 12;
  int price_denominator_max = 4;
  std::uint32_t density_num = 3;
  std::uint32_t density_den = 5;
  int max_total_holders = 0;  // 0 means no cap
  std::uint64_t seed = 0;
};

inline void require_valid(const GenConfig& cfg) {
  auto bad = [](const std::string& what) {
    throw std::invalid_argument("generator config: " + what);
  };
  if (cfg.museums_min < 1 || cfg.museums_max < cfg.museums_min) bad("museum range is empty");
  if (cfg.consortia_min < 1 || cfg.consortia_max < cfg.consortia_min) bad("consortium range is empty");
  if (cfg.general_holders_min < 0 || cfg.general_holders_max < cfg.general_holders_min)
    bad("general holder range is empty");
  if (cfg.consortium_holders_min < 0 || cfg.consortium_holders_max < cfg.consortium_holders_min)
    bad("consortium holder range is empty");
  if (cfg.individual_holders_min < 0 || cfg.individual_holders_max < cfg.individual_holders_min)
    bad("individual holder range is empty");
  if (cfg.price_numerator_max < 1 || cfg.price_denominator_max < 1) bad("price bounds must be positive");
  if (cfg.density_num == 0 || cfg.density_den == 0 || cfg.density_num > cfg.density_den)
    bad("visit density must lie in (0, 1]");
  if (cfg.max_total_holders < 0) bad("holder cap must be nonnegative");
}

/// Generates a valid problem, a deterministic function of the config
/// (including its seed). Singleton-consortium conventions are applied and
/// every holder column is repaired to contain at least one visit.
inline Problem generate(const GenConfig& cfg) {
  require_valid(cfg);
  SplitMix64 rng(cfg.seed);

  Problem p;
  p.museums = rng.range(cfg.museums_min, cfg.museums_max);
  const int s = rng.range(cfg.consortia_min, std::min(cfg.consortia_max, p.museums));

  // Partition: a shuffled museum list seeds one museum per block, the rest
  // land uniformly.
  std::vector<int> order(p.museums);
  for (int i = 0; i < p.museums; ++i) order[i] = i + 1;
  for (int i = p.museums - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  p.consortia.assign(s, {});
  for (int i = 0; i < p.museums; ++i) {
    int block = i < s ? i : static_cast<int>(rng.below(s));
    p.consortia[block].push_back(order[i]);
  }
  for (auto& block : p.consortia) std::sort(block.begin(), block.end());

  auto draw_price = [&] {
    long num = rng.range(1, cfg.price_numerator_max);
    long den = rng.range(1, cfg.price_denominator_max);
    return make_rat(num, den);
  };

  for (PassId id : all_pass_ids(p)) p.passes[id].price = draw_price();
  for (int t = 1; t <= s; ++t)
    if (is_singleton_consortium(p, t)) {
      int i = p.consortia[t - 1][0];
      p.passes[PassId::individual(i)].price = p.passes[PassId::consortium(t)].price;
    }

  // Holder counts, then an optional global cap trimmed from the largest set.
  std::map<PassId, int> counts;
  for (PassId id : all_pass_ids(p)) {
    if (id.is_general())
      counts[id] = rng.range(cfg.general_holders_min, cfg.general_holders_max);
    else if (id.is_consortium())
      counts[id] = rng.range(cfg.consortium_holders_min, cfg.consortium_holders_max);
    else if (is_singleton_consortium(p, consortium_of(p, id.museum())))
      counts[id] = 0;
    else
      counts[id] = rng.range(cfg.individual_holders_min, cfg.individual_holders_max);
  }
  if (cfg.max_total_holders > 0) {
    auto total = [&] {
      int n = 0;
      for (const auto& [id, c] : counts) n += c;
      return n;
    };
    while (total() > cfg.max_total_holders) {
      PassId largest = PassId::general();
      int best = -1;
      for (const auto& [id, c] : counts)
        if (c > best) {
          best = c;
          largest = id;
        }
      --counts[largest];
    }
  }

  long next_holder = 1;
  for (PassId id : all_pass_ids(p)) {
    Pass& pass = p.passes[id];
    const int n = counts[id];
    for (int c = 0; c < n; ++c) pass.holders.push_back(std::to_string(next_holder++));
    if (n == 0) continue;

    const std::vector<int> rows = pass_rows(p, id);
    if (id.is_individual()) {
      pass.visits = {std::vector<std::uint8_t>(n, 1)};
      continue;
    }
    pass.visits.assign(rows.size(), std::vector<std::uint8_t>(n, 0));
    for (int c = 0; c < n; ++c) {
      bool any = false;
      for (std::size_t row = 0; row < rows.size(); ++row) {
        if (rng.chance(cfg.density_num, cfg.density_den)) {
          pass.visits[row][c] = 1;
          any = true;
        }
      }
      if (!any) pass.visits[rng.below(rows.size())][c] = 1;
    }
  }

  require_valid(p);
  return p;
}

}  // namespace passalloc

#endif  // PASSALLOC_RANDGEN_HPP
