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

#ifndef PASSALLOC_TESTS_FIXTURES_HPP
#define PASSALLOC_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"
#include "passalloc/rules.hpp"

namespace passalloc::testing {

inline Rat rat(long num, long den = 1) { return make_rat(num, den); }

inline Pass make_pass(Rat price, std::vector<HolderId> holders = {},
                      std::vector<std::vector<std::uint8_t>> visits = {}) {
  Pass pass;
  pass.price = std::move(price);
  pass.holders = std::move(holders);
  pass.visits = std::move(visits);
  return pass;
}

/// The worked three-museum instance used across the suite: consortia
/// {1,2} and {3}, ten holders, revenue 25.
inline Problem example1() {
  Problem p;
  p.museums = 3;
  p.consortia = {{1, 2}, {3}};
  p.passes[PassId::individual(3)] = make_pass(rat(3));
  p.passes[PassId::individual(2)] = make_pass(rat(2), {"1", "2", "3"}, {{1, 1, 1}});
  p.passes[PassId::individual(1)] = make_pass(rat(1), {"4"}, {{1}});
  p.passes[PassId::general()] = make_pass(rat(4), {"5", "6"}, {{1, 0}, {1, 0}, {1, 1}});
  p.passes[PassId::consortium(1)] = make_pass(rat(2), {"7", "8"}, {{1, 1}, {0, 1}});
  p.passes[PassId::consortium(2)] = make_pass(rat(3), {"9", "10"}, {{1, 1}});
  return p;
}

/// Example 1 with the general pass unsold.
inline Problem example1_without_general() {
  Problem p = example1();
  Pass& general = p.passes[PassId::general()];
  general.holders.clear();
  general.visits.clear();
  return p;
}

inline Allocation alloc(std::vector<Rat> values) { return values; }

}  // namespace passalloc::testing

#endif  // PASSALLOC_TESTS_FIXTURES_HPP
