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

#include "passalloc/problem.hpp"
#include "passalloc/randgen.hpp"
#include "passalloc/transforms.hpp"

#include "fixtures.hpp"

using namespace passalloc;
using namespace passalloc::testing;

namespace {

bool has_violation(const ValidationReport& report, const std::string& code) {
  for (const auto& v : report.violations)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("pass ids discriminate the three pass kinds") {
  CHECK(PassId::general().is_general());
  CHECK(PassId::individual(3).is_individual());
  CHECK(PassId::individual(3).museum() == 3);
  CHECK(PassId::individual(3).sigma() == -3);
  CHECK(PassId::consortium(2).is_consortium());
  CHECK(PassId::consortium(2).consortium_index() == 2);
  CHECK_FALSE(PassId::from_sigma(-4, 3, 2).has_value());
  CHECK_FALSE(PassId::from_sigma(3, 3, 2).has_value());
  CHECK(PassId::from_sigma(-3, 3, 2).has_value());
}

TEST_CASE("the worked example validates cleanly") {
  CHECK(validate(example1()).ok());
}

TEST_CASE("an all-zero visit column is rejected") {
  Problem p = example1();
  Pass& general = p.passes[PassId::general()];
  for (auto& row : general.visits) row[0] = 0;  // holder 5 now visits nothing
  ValidationReport report = validate(p);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "empty visit column"));
}

TEST_CASE("the singleton price convention is enforced") {
  Problem p = example1();
  p.passes[PassId::individual(3)].price = rat(2);  // consortium {3} sells at 3
  ValidationReport report = validate(p);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "singleton price convention"));
}

TEST_CASE("a singleton consortium's individual pass must be unsold") {
  Problem p = example1();
  p.passes[PassId::individual(3)] = make_pass(rat(3), {"11"}, {{1}});
  ValidationReport report = validate(p);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "singleton holders convention"));
}

TEST_CASE("holder ids must be globally unique") {
  Problem p = example1();
  p.passes[PassId::general()].holders[1] = "4";  // already an individual buyer
  ValidationReport report = validate(p);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "duplicate holder id"));
}

TEST_CASE("the partition must tile the museum set") {
  Problem p = example1();
  p.consortia = {{1, 2}, {2, 3}};
  CHECK(has_violation(validate(p), "partition coverage"));
  p.consortia = {{1, 2}};
  CHECK(has_violation(validate(p), "partition coverage"));
}

TEST_CASE("nonpositive prices and missing passes are flagged") {
  Problem p = example1();
  p.passes[PassId::individual(1)].price = rat(0);
  CHECK(has_violation(validate(p), "nonpositive price"));

  Problem q = example1();
  q.passes.erase(PassId::individual(1));
  CHECK(has_violation(validate(q), "missing pass"));
}

TEST_CASE("revenue of the worked example is 25") {
  CHECK(revenue(example1()) == rat(25));
}

TEST_CASE("revenue of a one-sale problem is the pass price") {
  Problem p;
  p.museums = 2;
  p.consortia = {{1, 2}};
  p.passes[PassId::individual(1)] = make_pass(rat(7), {"a"}, {{1}});
  p.passes[PassId::individual(2)] = make_pass(rat(1));
  p.passes[PassId::general()] = make_pass(rat(5));
  p.passes[PassId::consortium(1)] = make_pass(rat(6));
  CHECK(revenue(p) == rat(7));
}

TEST_CASE("dropping the general pass drops its revenue") {
  CHECK(revenue(example1_without_general()) == rat(17));
}

TEST_CASE("derived indices recover visited museums and consortia") {
  Problem p = example1();
  ProblemIndex ix(p);

  CHECK(ix.visited_museums("5") == std::vector<int>{1, 2, 3});
  CHECK(ix.visited_consortia("5") == std::vector<int>{1, 2});
  CHECK(ix.visited_museums("6") == std::vector<int>{3});
  CHECK(ix.visited_consortia("6") == std::vector<int>{2});
  CHECK(ix.visited_museums("4") == std::vector<int>{1});  // individual pass
  CHECK(ix.visited_museums("8") == std::vector<int>{1, 2});

  CHECK(ix.visitor_count(PassId::general(), 3) == 2);
  CHECK(ix.visitor_count(PassId::consortium(1), 2) == 1);
  CHECK(ix.consortium_of(2) == 1);
  CHECK(ix.consortium_of(3) == 2);

  CHECK_FALSE(ix.find_holder("nobody").has_value());
  CHECK_THROWS_AS(ix.visited_museums("nobody"), std::out_of_range);
  CHECK_THROWS_AS(ix.visited_consortia("4"), std::invalid_argument);
}

TEST_CASE("the worked example has no dummy museum") {
  CHECK(dummy_set(example1()).empty());
}

TEST_CASE("a museum with all visits removed becomes dummy") {
  Problem p = example1();
  p.passes[PassId::individual(2)] = make_pass(rat(2));  // no individual buyers
  Pass& general = p.passes[PassId::general()];
  general.visits[1] = {0, 0};
  Pass& consortium = p.passes[PassId::consortium(1)];
  consortium.visits[1] = {0, 0};
  REQUIRE(validate(p).ok());
  CHECK(dummy_set(p) == std::set<int>{2});
}

TEST_CASE("a single-museum problem with a visitor has no dummy") {
  Problem p;
  p.museums = 1;
  p.consortia = {{1}};
  p.passes[PassId::individual(1)] = make_pass(rat(2));
  p.passes[PassId::general()] = make_pass(rat(3));
  p.passes[PassId::consortium(1)] = make_pass(rat(2), {"a"}, {{1}});
  REQUIRE(validate(p).ok());
  CHECK(dummy_set(p).empty());
}

TEST_CASE("subdomain classification distinguishes the pass-restricted classes") {
  Problem p = example1();
  CHECK(classify_subdomain(p).kind == SubdomainKind::Mixed);

  Problem only_general = restrict_to(p, PassId::general());
  CHECK(classify_subdomain(only_general).kind == SubdomainKind::GeneralOnly);

  Problem only_first = restrict_to(p, PassId::consortium(1));
  Subdomain c = classify_subdomain(only_first);
  CHECK(c.kind == SubdomainKind::SingleConsortium);
  CHECK(c.index == 1);

  Problem only_individual = restrict_to(p, PassId::individual(2));
  Subdomain i = classify_subdomain(only_individual);
  CHECK(i.kind == SubdomainKind::SingleMuseum);
  CHECK(i.index == 2);

  Problem empty = restrict_to(only_first, PassId::general());
  CHECK(classify_subdomain(empty).kind == SubdomainKind::GeneralOnly);
}

TEST_CASE("generated problems satisfy the structural invariants") {
  GenConfig cfg;
  cfg.museums_min = 1;
  cfg.museums_max = 7;
  cfg.consortia_max = 4;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    cfg.seed = seed;
    Problem p = generate(cfg);
    REQUIRE(validate(p).ok());

    // partition tiles the museum set
    std::set<int> covered;
    for (const auto& block : p.consortia)
      for (int i : block) {
        CHECK(!covered.count(i));
        covered.insert(i);
      }
    CHECK(covered.size() == static_cast<std::size_t>(p.museums));

    // no dummy museum has a visitor anywhere
    ProblemIndex ix(p);
    for (int i : dummy_set(p)) {
      CHECK(ix.visitor_count(PassId::individual(i), i) == 0);
      CHECK(ix.visitor_count(PassId::general(), i) == 0);
      CHECK(ix.visitor_count(PassId::consortium(ix.consortium_of(i)), i) == 0);
    }
  }
}
