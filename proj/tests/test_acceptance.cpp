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
//
// End-to-end acceptance suite. Each criterion prints one pass/fail line; the
// whole suite must stay green.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "passalloc/axioms.hpp"
#include "passalloc/games.hpp"
#include "passalloc/io.hpp"
#include "passalloc/randgen.hpp"
#include "passalloc/rules.hpp"
#include "passalloc/transforms.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace passalloc;
using namespace passalloc::testing;

namespace {

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;

  template <typename Body>
  void run(Body&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "ACCEPTANCE " << number << " [" << name << "]: " << (ok ? "PASS" : "FAIL")
              << " (" << elapsed << "s, limit " << limit_seconds << "s)"
              << (note.empty() ? "" : " — " + note) << std::endl;
    CHECK(ok);
    CHECK(elapsed < limit_seconds);
  }
};

GenConfig efficiency_config() {
  GenConfig cfg;
  cfg.museums_min = 1;
  cfg.museums_max = 10;
  cfg.consortia_min = 1;
  cfg.consortia_max = 4;
  cfg.general_holders_min = 0;
  cfg.general_holders_max = 4;
  cfg.consortium_holders_min = 0;
  cfg.consortium_holders_max = 2;
  cfg.individual_holders_min = 0;
  cfg.individual_holders_max = 1;
  cfg.max_total_holders = 12;
  return cfg;
}

Problem keep_first_holder(Problem p, PassId id) {
  Pass& pass = p.passes.at(id);
  pass.holders.resize(1);
  for (auto& row : pass.visits) row.resize(1);
  return p;
}

}  // namespace

TEST_CASE("criterion 1: worked-example payouts, exactly") {
  Criterion{1, "worked-example golden values", 1.0}.run([&](std::string& note) {
    Problem p = load_problem(std::string(PASSALLOC_DATA_DIR) + "/example1.json");
    bool ok = revenue(p) == rat(25);
    ok = ok && allocate(Rule::EE, p) == alloc({rat(5), rat(8), rat(12)});
    ok = ok && allocate(Rule::PP, p) == alloc({rat(21, 5), rat(42, 5), rat(62, 5)});
    ok = ok && allocate(Rule::PE, p) == alloc({rat(24, 5), rat(39, 5), rat(62, 5)});
    ok = ok && allocate(Rule::EP, p) == alloc({rat(13, 3), rat(26, 3), rat(36, 3)});
    if (!ok) note = "a golden value diverged";
    return ok;
  });
}

TEST_CASE("criterion 2: every rule is efficient on 1000 seeded problems") {
  Criterion{2, "efficiency of all 14 rules", 30.0}.run([&](std::string& note) {
    GenConfig cfg = efficiency_config();
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      cfg.seed = seed;
      Problem p = generate(cfg);
      Rat total = revenue(p);
      for (Rule rule : kAllRules) {
        Allocation a = allocate(rule, p);
        Rat sum(0);
        for (const Rat& x : a) {
          if (x < 0) {
            note = "negative payout under " + std::string(to_string(rule)) + " at seed " +
                   std::to_string(seed);
            return false;
          }
          sum += x;
        }
        if (sum != total) {
          note = "rule " + std::string(to_string(rule)) + " broke efficiency at seed " +
                 std::to_string(seed);
          return false;
        }
      }
    }
    return true;
  });
}

TEST_CASE("criterion 3: theorem satisfaction audits, 200 instances each") {
  Criterion{3, "theorem satisfaction audits", 120.0}.run([&](std::string& note) {
    AuditConfig config;
    config.instances = 200;
    config.seed = 2026;
    for (Rule rule : {Rule::EE, Rule::PP, Rule::PE, Rule::EP}) {
      AuditReport report = audit(rule, config, characteristic_axioms(rule));
      if (!report.all_passed()) {
        for (const auto& [axiom, st] : report.stats)
          if (st.failed > 0)
            note = "rule " + std::string(to_string(rule)) + " failed " +
                   std::string(to_string(axiom)) + " " + std::to_string(st.failed) + " times";
        return false;
      }
      for (const auto& [axiom, st] : report.stats)
        if (st.passed == 0) {
          note = "audit of " + std::string(to_string(rule)) + "/" +
                 std::string(to_string(axiom)) + " never applied";
          return false;
        }
    }
    return true;
  });
}

TEST_CASE("criterion 4: independence witnesses for every designated pair") {
  Criterion{4, "independence witness search", 300.0}.run([&](std::string& note) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("acceptance_witnesses");
    fs::create_directories(dir);
    int discrepancies = 0;
    for (int theorem : {2, 3, 4, 5}) {
      SearchConfig config;
      config.budget = 500;
      config.satisfaction_sample = 25;
      config.seed = 4040 + theorem;
      IndependenceReport report = independence_witnesses(theorem, config);
      for (const auto& entry : report.entries) {
        if (!entry.witness) {
          note = "no witness for " + std::string(to_string(entry.rule)) + "/" +
                 std::string(to_string(entry.axiom)) + " within 500 instances (theorem " +
                 std::to_string(theorem) + ")";
          return false;
        }
        // store and replay
        std::string name = "thm" + std::to_string(theorem) + "_" +
                           std::string(to_string(entry.rule)) + "_" +
                           std::string(to_string(entry.axiom)) + ".json";
        std::ofstream out(dir / name);
        out << entry.witness->to_json().dump(2) << "\n";
        out.close();
        std::ifstream in(dir / name);
        Witness replayed = Witness::from_json(json::parse(in));
        if (!replay(replayed).failed()) {
          note = "stored witness " + name + " did not replay to a failure";
          return false;
        }
        for (const auto& [axiom, ok] : entry.others_satisfied)
          if (!ok) ++discrepancies;
      }
    }
    if (discrepancies > 0)
      note = std::to_string(discrepancies) +
             " sampled satisfaction discrepancies (reported, see the independence reports)";
    return true;
  });
}

TEST_CASE("criterion 5: owen value coincides with ee; coefficient formula matches the oracle") {
  Criterion{5, "owen coincidence", 120.0}.run([&](std::string& note) {
    GenConfig cfg;
    cfg.museums_min = 1;
    cfg.museums_max = 8;
    cfg.consortia_max = 4;
    int oracle_checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      cfg.seed = seed;
      Problem p = generate(cfg);
      CharacteristicFunction v = build_game(p);
      std::vector<Rat> owen = owen_value(v, p.consortia);
      if (owen != allocate(Rule::EE, p)) {
        note = "owen diverged from ee at seed " + std::to_string(seed);
        return false;
      }
      if (p.museums <= 6) {
        ++oracle_checked;
        if (owen != owen_permutation_oracle(v, p.consortia)) {
          note = "coefficient formula diverged from the permutation oracle at seed " +
                 std::to_string(seed);
          return false;
        }
      }
    }
    if (oracle_checked < 30) {
      note = "only " + std::to_string(oracle_checked) + " small instances hit the oracle path";
      return false;
    }
    note = "100 instances, " + std::to_string(oracle_checked) + " oracle-checked";
    return true;
  });
}

TEST_CASE("criterion 6: appendix lemma suite on 200 seeded instances each") {
  Criterion{6, "lemma suite", 120.0}.run([&](std::string& note) {
    // individual-only problems pay the individual revenue and nothing else
    {
      GenConfig cfg;
      cfg.individual_holders_max = 3;
      int checked = 0;
      for (std::uint64_t seed = 0; checked < 200; ++seed) {
        if (seed > 2000) {
          note = "could not assemble 200 individual-only instances";
          return false;
        }
        cfg.seed = seed;
        Problem base = generate(cfg);
        bool used = false;
        for (int i = 1; i <= base.museums && !used; ++i) {
          Problem p = restrict_to(base, PassId::individual(i));
          const Pass& pass = pass_at(p, PassId::individual(i));
          if (!pass.sold()) continue;
          used = true;
          ++checked;
          Rat floor = Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
          for (Rule rule : {Rule::EE, Rule::PP, Rule::PE, Rule::EP}) {
            Allocation a = allocate(rule, p);
            if (a[i - 1] != floor) {
              note = "individual-only payout mismatch at seed " + std::to_string(seed);
              return false;
            }
            for (int j = 1; j <= p.museums; ++j)
              if (j != i && a[j - 1] != 0) {
                note = "individual-only leak at seed " + std::to_string(seed);
                return false;
              }
          }
        }
      }
    }

    // per-pass restriction decomposition for the four canonical rules
    {
      GenConfig cfg;
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        cfg.seed = seed;
        Problem p = generate(cfg);
        for (Rule rule : {Rule::EE, Rule::PP, Rule::PE, Rule::EP}) {
          Allocation whole = allocate(rule, p);
          Allocation sum(p.museums, Rat(0));
          for (PassId id : all_pass_ids(p)) {
            Allocation part = allocate(rule, restrict_to(p, id));
            for (int i = 0; i < p.museums; ++i) sum[i] += part[i];
          }
          if (whole != sum) {
            note = "restriction decomposition failed at seed " + std::to_string(seed);
            return false;
          }
        }
      }
    }

    // consortium-price monotonicity on reduced single-buyer problems
    {
      GenConfig cfg;
      cfg.general_holders_min = 1;
      cfg.general_holders_max = 1;
      cfg.consortium_holders_max = 0;
      cfg.individual_holders_max = 0;
      cfg.consortia_min = 2;
      cfg.consortia_max = 4;
      cfg.museums_min = 2;
      cfg.museums_max = 8;
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        cfg.seed = seed;
        Problem reduced = reduce_problem(generate(cfg));
        ProblemIndex ix(reduced);
        const std::vector<int>& touched = ix.consortia_visited(0);
        for (Rule rule : {Rule::PP, Rule::PE}) {
          Allocation a = allocate(rule, reduced);
          for (int k : touched)
            for (int r : touched)
              if (price_of(reduced, PassId::consortium(k)) >=
                      price_of(reduced, PassId::consortium(r)) &&
                  a[k - 1] < a[r - 1]) {
                note = "consortium-price monotonicity failed at seed " + std::to_string(seed);
                return false;
              }
        }
      }
    }

    // individual-price monotonicity on single-buyer problems (general pass
    // and consortium pass alike)
    {
      GenConfig cfg;
      cfg.general_holders_min = 1;
      cfg.general_holders_max = 1;
      cfg.consortium_holders_min = 1;
      cfg.consortium_holders_max = 1;
      cfg.individual_holders_max = 0;
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        cfg.seed = seed;
        Problem base = generate(cfg);
        std::vector<Problem> cases;
        cases.push_back(keep_first_holder(restrict_to(base, PassId::general()),
                                          PassId::general()));
        for (int t = 1; t <= consortium_count(base); ++t)
          if (pass_at(base, PassId::consortium(t)).sold()) {
            cases.push_back(keep_first_holder(restrict_to(base, PassId::consortium(t)),
                                              PassId::consortium(t)));
            break;
          }
        for (const Problem& p : cases) {
          ProblemIndex ix(p);
          for (Rule rule : {Rule::PP, Rule::EP}) {
            Allocation a = allocate(rule, p);
            for (int i = 1; i <= p.museums; ++i)
              for (int j = 1; j <= p.museums; ++j) {
                if (ix.consortium_of(i) != ix.consortium_of(j)) continue;
                bool i_visited = ix.visitor_count(PassId::general(), i) +
                                     ix.visitor_count(PassId::consortium(ix.consortium_of(i)), i) >
                                 0;
                bool j_visited = ix.visitor_count(PassId::general(), j) +
                                     ix.visitor_count(PassId::consortium(ix.consortium_of(j)), j) >
                                 0;
                if (!i_visited || !j_visited) continue;
                if (price_of(p, PassId::individual(i)) >= price_of(p, PassId::individual(j)) &&
                    a[i - 1] < a[j - 1]) {
                  note = "individual-price monotonicity failed at seed " + std::to_string(seed);
                  return false;
                }
              }
          }
        }
      }
    }
    return true;
  });
}

TEST_CASE("criterion 7: ee equals the per-holder equal split on singleton partitions") {
  Criterion{7, "singleton-partition reduction", 60.0}.run([&](std::string& note) {
    GenConfig cfg;
    cfg.museums_min = 1;
    cfg.museums_max = 8;
    cfg.general_holders_min = 1;
    cfg.general_holders_max = 5;
    cfg.consortium_holders_max = 0;
    cfg.individual_holders_max = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      cfg.seed = seed;
      Problem p = generate(cfg);
      // rebuild on the singleton partition
      p.consortia.clear();
      for (int i = 1; i <= p.museums; ++i) p.consortia.push_back({i});
      std::map<PassId, Pass> passes;
      for (int i = 1; i <= p.museums; ++i) {
        Rat price = p.passes.at(PassId::individual(i)).price;
        passes[PassId::individual(i)] = Pass{price, {}, {}};
        passes[PassId::consortium(i)] = Pass{price, {}, {}};
      }
      passes[PassId::general()] = p.passes.at(PassId::general());
      p.passes = std::move(passes);
      require_valid(p);

      const Pass& general = pass_at(p, PassId::general());
      Allocation expected(p.museums, Rat(0));
      for (std::size_t c = 0; c < general.holders.size(); ++c) {
        long visited = 0;
        for (int i = 1; i <= p.museums; ++i) visited += general.visits[i - 1][c];
        for (int i = 1; i <= p.museums; ++i)
          if (general.visits[i - 1][c]) expected[i - 1] += general.price / Rat(visited);
      }
      if (allocate(Rule::EE, p) != expected) {
        note = "reduction mismatch at seed " + std::to_string(seed);
        return false;
      }
    }
    return true;
  });
}
