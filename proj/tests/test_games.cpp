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

#include <catch2/catch_amalgamated.hpp>

#include "passalloc/games.hpp"
#include "passalloc/randgen.hpp"
#include "passalloc/rules.hpp"
#include "passalloc/transforms.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace passalloc;
using namespace passalloc::testing;

TEST_CASE("the worked example's game values cover the holder bundles") {
  CharacteristicFunction v = build_game(example1());
  CHECK(v.value(0) == rat(0));
  CHECK(v.value(0b100) == rat(10));  // {3}: holder 6 plus the two consortium buyers
  CHECK(v.value(0b111) == rat(25));  // the grand coalition collects E
  CHECK(v.value(0b011) == rat(11));  // {1,2}: holders 1..4 and 7,8
}

TEST_CASE("game values are monotone and anchored at zero") {
  GenConfig cfg;
  cfg.museums_max = 6;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    CharacteristicFunction v = build_game(p);
    CHECK(v.value(0) == rat(0));
    CHECK(v.value(v.full_mask()) == revenue(p));
    for (std::uint32_t mask = 0; mask <= v.full_mask(); ++mask)
      for (int i = 1; i <= v.players; ++i) {
        const std::uint32_t bit = std::uint32_t(1) << (i - 1);
        if (mask & bit) continue;
        CHECK(v.value(mask) <= v.value(mask | bit));
      }
  }
}

TEST_CASE("build_game refuses problems beyond the enumeration bound") {
  Problem p;
  p.museums = 13;
  for (int i = 1; i <= 13; ++i) {
    p.consortia.push_back({i});
    p.passes[PassId::individual(i)] = make_pass(rat(1));
    p.passes[PassId::consortium(i)] = make_pass(rat(1));
  }
  p.passes[PassId::general()] = make_pass(rat(2));
  REQUIRE(validate(p).ok());
  CHECK_THROWS_AS(build_game(p), std::invalid_argument);
  CHECK_NOTHROW(build_game(p, 13));
}

TEST_CASE("shapley value of an additive game returns the per-player weights") {
  CharacteristicFunction v;
  v.players = 3;
  v.values.assign(8, rat(0));
  const Rat weights[3] = {rat(1), rat(5, 2), rat(4)};
  for (std::uint32_t mask = 0; mask < 8; ++mask)
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) v.values[mask] += weights[i];
  std::vector<Rat> phi = shapley_value(v);
  CHECK(phi == std::vector<Rat>{rat(1), rat(5, 2), rat(4)});
}

TEST_CASE("shapley value of the symmetric two-player unanimity game splits evenly") {
  CharacteristicFunction v;
  v.players = 2;
  v.values = {rat(0), rat(0), rat(0), rat(1)};
  CHECK(shapley_value(v) == std::vector<Rat>{rat(1, 2), rat(1, 2)});
}

TEST_CASE("shapley and owen payouts are efficient") {
  GenConfig cfg;
  cfg.museums_max = 6;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    CharacteristicFunction v = build_game(p);
    Rat grand = v.value(v.full_mask());
    Rat shapley_sum(0);
    for (const Rat& x : shapley_value(v)) shapley_sum += x;
    CHECK(shapley_sum == grand);
    Rat owen_sum(0);
    for (const Rat& x : owen_value(v, p.consortia)) owen_sum += x;
    CHECK(owen_sum == grand);
  }
}

TEST_CASE("owen degenerates to shapley on singleton and one-block partitions") {
  GenConfig cfg;
  cfg.museums_max = 5;
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    CharacteristicFunction v = build_game(p);
    std::vector<Rat> phi = shapley_value(v);

    std::vector<std::vector<int>> singletons;
    for (int i = 1; i <= p.museums; ++i) singletons.push_back({i});
    CHECK(owen_value(v, singletons) == phi);

    std::vector<int> everyone;
    for (int i = 1; i <= p.museums; ++i) everyone.push_back(i);
    CHECK(owen_value(v, {everyone}) == phi);
  }
}

TEST_CASE("the worked example's owen value equals its ee allocation") {
  Problem p = example1();
  CharacteristicFunction v = build_game(p);
  std::vector<Rat> owen = owen_value(v, p.consortia);
  CHECK(owen == std::vector<Rat>{rat(5), rat(8), rat(12)});
  CHECK(owen == allocate(Rule::EE, p));
}

TEST_CASE("owen coincides with ee on random problems") {
  GenConfig cfg;
  cfg.museums_max = 7;
  cfg.consortia_max = 4;
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    CHECK(owen_value(build_game(p), p.consortia) == allocate(Rule::EE, p));
  }
}

TEST_CASE("the coefficient formula matches the permutation oracle") {
  GenConfig cfg;
  cfg.museums_max = 6;
  for (std::uint64_t seed = 400; seed < 430; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    CharacteristicFunction v = build_game(p);
    CHECK(owen_value(v, p.consortia) == owen_permutation_oracle(v, p.consortia));
  }
}

TEST_CASE("general-only singleton-partition games reduce to the shapley rule") {
  GenConfig cfg;
  cfg.museums_max = 6;
  cfg.consortium_holders_max = 0;
  cfg.individual_holders_max = 0;
  cfg.general_holders_min = 1;
  for (std::uint64_t seed = 500; seed < 530; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    // rebuild with the singleton partition
    p.consortia.clear();
    for (int i = 1; i <= p.museums; ++i) p.consortia.push_back({i});
    std::map<PassId, Pass> passes;
    for (int i = 1; i <= p.museums; ++i) {
      Rat price = p.passes[PassId::individual(i)].price;
      passes[PassId::individual(i)] = make_pass(price);
      passes[PassId::consortium(i)] = make_pass(price);
    }
    passes[PassId::general()] = p.passes[PassId::general()];
    p.passes = std::move(passes);
    REQUIRE(validate(p).ok());

    CHECK(shapley_value(build_game(p)) == allocate(Rule::EE, p));
  }
}

TEST_CASE("owen rejects malformed partitions") {
  CharacteristicFunction v = build_game(example1());
  CHECK_THROWS_AS(owen_value(v, {{1, 2}}), std::invalid_argument);          // misses player 3
  CHECK_THROWS_AS(owen_value(v, {{1, 2}, {2, 3}}), std::invalid_argument);  // repeats player 2
  CHECK_THROWS_AS(owen_value(v, {{1, 2}, {3}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(owen_value(v, {{1, 2}, {3, 4}}), std::invalid_argument);  // unknown player
}
