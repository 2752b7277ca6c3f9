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

#ifndef PASSALLOC_AXIOMS_HPP
#define PASSALLOC_AXIOMS_HPP

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "passalloc/io.hpp"
#include "passalloc/problem.hpp"
#include "passalloc/randgen.hpp"
#include "passalloc/rules.hpp"
#include "passalloc/transforms.hpp"

namespace passalloc {

enum class Axiom {
  Composition,
  SymmetryWithin,
  SymmetryBetween,
  Dummy,
  SplittingMuseums,
  SplittingConsortia,
  ConsortiaConsistency,
};

inline constexpr std::array<Axiom, 7> kAllAxioms = {
    Axiom::Composition,        Axiom::SymmetryWithin,     Axiom::SymmetryBetween,
    Axiom::Dummy,              Axiom::SplittingMuseums,   Axiom::SplittingConsortia,
    Axiom::ConsortiaConsistency};

inline std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Composition: return "composition";
    case Axiom::SymmetryWithin: return "sym-within";
    case Axiom::SymmetryBetween: return "sym-between";
    case Axiom::Dummy: return "dummy";
    case Axiom::SplittingMuseums: return "split-museums";
    case Axiom::SplittingConsortia: return "split-consortia";
    case Axiom::ConsortiaConsistency: return "consortia-consistency";
  }
  return "?";
}

inline std::optional<Axiom> axiom_from_string(std::string_view tag) {
  for (Axiom axiom : kAllAxioms)
    if (to_string(axiom) == tag) return axiom;
  return std::nullopt;
}

/// The axioms that characterize a canonical rule; every axiom for the
/// counterexample rules.
inline std::set<Axiom> characteristic_axioms(Rule rule) {
  switch (rule) {
    case Rule::EE:
      return {Axiom::Composition, Axiom::SymmetryWithin, Axiom::SymmetryBetween, Axiom::Dummy};
    case Rule::PP:
      return {Axiom::Composition, Axiom::Dummy, Axiom::SplittingMuseums,
              Axiom::SplittingConsortia, Axiom::ConsortiaConsistency};
    case Rule::PE:
      return {Axiom::Composition, Axiom::Dummy, Axiom::SymmetryWithin,
              Axiom::SplittingConsortia, Axiom::ConsortiaConsistency};
    case Rule::EP:
      return {Axiom::Composition, Axiom::Dummy, Axiom::SymmetryBetween, Axiom::SplittingMuseums};
    default:
      return std::set<Axiom>(kAllAxioms.begin(), kAllAxioms.end());
  }
}

// ---------------------------------------------------------------------------
// Check results and witnesses

/// A replayable record of one failed check: the instance, the transformation
/// parameters, and the two values that should have been equal.
struct Witness {
  Rule rule = Rule::EE;
  Axiom axiom = Axiom::Composition;
  json problem;
  json transform;
  std::string lhs;
  std::string rhs;
  std::string detail;

  json to_json() const {
    json out;
    out["rule"] = std::string(passalloc::to_string(rule));
    out["axiom"] = std::string(passalloc::to_string(axiom));
    out["problem"] = problem;
    out["transform"] = transform;
    out["lhs"] = lhs;
    out["rhs"] = rhs;
    out["detail"] = detail;
    return out;
  }

  static Witness from_json(const json& in) {
    Witness w;
    auto rule = rule_from_string(in.at("rule").get<std::string>());
    auto axiom = axiom_from_string(in.at("axiom").get<std::string>());
    if (!rule || !axiom) throw std::invalid_argument("witness: unknown rule or axiom tag");
    w.rule = *rule;
    w.axiom = *axiom;
    w.problem = in.at("problem");
    w.transform = in.value("transform", json::object());
    w.lhs = in.value("lhs", "");
    w.rhs = in.value("rhs", "");
    w.detail = in.value("detail", "");
    return w;
  }
};

struct CheckResult {
  enum class Status { Passed, Failed, NotApplicable };
  Status status = Status::NotApplicable;
  std::optional<Witness> witness;  // present iff Failed
  std::string note;                // applicability detail

  bool passed() const { return status == Status::Passed; }
  bool failed() const { return status == Status::Failed; }

  static CheckResult pass() { return {Status::Passed, std::nullopt, ""}; }
  static CheckResult fail(Witness w) { return {Status::Failed, std::move(w), ""}; }
  static CheckResult not_applicable(std::string note) {
    return {Status::NotApplicable, std::nullopt, std::move(note)};
  }
};

namespace detail {

inline std::string render_allocation(const Allocation& a) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out << ", ";
    out << to_fraction_string(a[i]);
  }
  out << ")";
  return out.str();
}

inline Rat individual_revenue(const Problem& p, int museum) {
  const Pass& pass = pass_at(p, PassId::individual(museum));
  return Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
}

inline bool rows_equal(const Pass& pass, std::size_t row_a, std::size_t row_b) {
  if (!pass.sold()) return true;
  return pass.visits[row_a] == pass.visits[row_b];
}

inline std::size_t row_position(const std::vector<int>& rows, int museum) {
  std::size_t r = 0;
  while (rows[r] != museum) ++r;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance checkers

/// Composition: allocating the pooled problem equals the sum of the two
/// per-period allocations.
inline CheckResult check_composition(Rule rule, const Problem& d1, const Problem& d2) {
  Problem pooled = concat(d1, d2);  // also validates compatibility
  Allocation whole = allocate(rule, pooled);
  Allocation first = allocate(rule, d1);
  Allocation second = allocate(rule, d2);
  Allocation sum(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) sum[i] = first[i] + second[i];
  if (whole == sum) return CheckResult::pass();
  Witness w;
  w.rule = rule;
  w.axiom = Axiom::Composition;
  w.problem = problem_to_json(d1);
  w.transform["second_problem"] = problem_to_json(d2);
  w.lhs = detail::render_allocation(whole);
  w.rhs = detail::render_allocation(sum);
  w.detail = "pooled allocation differs from the sum of the period allocations";
  return CheckResult::fail(std::move(w));
}

/// Symmetry within consortia: two museums of one consortium with identical
/// visit rows and equal individual revenue receive equal payouts.
inline CheckResult check_symmetry_within(Rule rule, const Problem& p, int i, int j) {
  require_valid(p);
  if (i < 1 || i > p.museums || j < 1 || j > p.museums)
    throw std::invalid_argument("sym-within: unknown museum");
  if (i == j) return CheckResult::pass();
  const int k = consortium_of(p, i);
  if (k != consortium_of(p, j))
    return CheckResult::not_applicable("museums lie in different consortia");

  const Pass& general = pass_at(p, PassId::general());
  const std::vector<int> general_rows = pass_rows(p, PassId::general());
  if (!detail::rows_equal(general, detail::row_position(general_rows, i),
                          detail::row_position(general_rows, j)))
    return CheckResult::not_applicable("general-pass visits differ");

  const Pass& consortium = pass_at(p, PassId::consortium(k));
  const std::vector<int> block_rows = pass_rows(p, PassId::consortium(k));
  if (!detail::rows_equal(consortium, detail::row_position(block_rows, i),
                          detail::row_position(block_rows, j)))
    return CheckResult::not_applicable("consortium-pass visits differ");

  if (detail::individual_revenue(p, i) != detail::individual_revenue(p, j))
    return CheckResult::not_applicable("individual revenues differ");

  Allocation a = allocate(rule, p);
  if (a[i - 1] == a[j - 1]) return CheckResult::pass();
  Witness w;
  w.rule = rule;
  w.axiom = Axiom::SymmetryWithin;
  w.problem = problem_to_json(p);
  w.transform["pair"] = {i, j};
  w.lhs = to_fraction_string(a[i - 1]);
  w.rhs = to_fraction_string(a[j - 1]);
  w.detail = "museums " + std::to_string(i) + " and " + std::to_string(j) +
             " are symmetric but paid differently";
  return CheckResult::fail(std::move(w));
}

/// Symmetry between consortia: two consortia visited by the same general
/// pass holders, with equal consortium revenue and equal aggregate
/// individual revenue, receive equal aggregate payouts.
inline CheckResult check_symmetry_between(Rule rule, const Problem& p, int r, int t) {
  require_valid(p);
  const int s = consortium_count(p);
  if (r < 1 || r > s || t < 1 || t > s)
    throw std::invalid_argument("sym-between: unknown consortium");
  if (r == t) return CheckResult::pass();
  ProblemIndex ix(p);

  const Pass& general = pass_at(p, PassId::general());
  for (std::size_t c = 0; c < general.holders.size(); ++c) {
    const std::vector<int>& ks = ix.consortia_visited(static_cast<int>(c));
    bool in_r = std::find(ks.begin(), ks.end(), r) != ks.end();
    bool in_t = std::find(ks.begin(), ks.end(), t) != ks.end();
    if (in_r != in_t)
      return CheckResult::not_applicable(
          "a general-pass holder visits one consortium but not the other");
  }

  auto pass_revenue = [&](int k) {
    const Pass& pass = pass_at(p, PassId::consortium(k));
    return Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
  };
  if (pass_revenue(r) != pass_revenue(t))
    return CheckResult::not_applicable("consortium revenues differ");

  auto individual_sum = [&](int k) {
    Rat sum(0);
    for (int i : ix.block(k)) sum += detail::individual_revenue(p, i);
    return sum;
  };
  if (individual_sum(r) != individual_sum(t))
    return CheckResult::not_applicable("aggregate individual revenues differ");

  Allocation a = allocate(rule, p);
  Rat lhs(0), rhs(0);
  for (int i : ix.block(r)) lhs += a[i - 1];
  for (int j : ix.block(t)) rhs += a[j - 1];
  if (lhs == rhs) return CheckResult::pass();
  Witness w;
  w.rule = rule;
  w.axiom = Axiom::SymmetryBetween;
  w.problem = problem_to_json(p);
  w.transform["pair"] = {r, t};
  w.lhs = to_fraction_string(lhs);
  w.rhs = to_fraction_string(rhs);
  w.detail = "consortia " + std::to_string(r) + " and " + std::to_string(t) +
             " are symmetric but their aggregates differ";
  return CheckResult::fail(std::move(w));
}

/// Dummy: every museum with no visitors gets exactly zero. Passes vacuously
/// when the problem has no dummy museum.
inline CheckResult check_dummy(Rule rule, const Problem& p) {
  std::set<int> dummies = dummy_set(p);
  Allocation a = allocate(rule, p);
  for (int i : dummies) {
    if (a[i - 1] == 0) continue;
    Witness w;
    w.rule = rule;
    w.axiom = Axiom::Dummy;
    w.problem = problem_to_json(p);
    w.transform["museum"] = i;
    w.lhs = to_fraction_string(a[i - 1]);
    w.rhs = "0";
    w.detail = "museum " + std::to_string(i) + " has no visitors but receives a payout";
    return CheckResult::fail(std::move(w));
  }
  return CheckResult::pass();
}

namespace detail {
inline json split_spec_to_json(const MuseumSplitSpec& spec) {
  json out;
  out["target"] = spec.target;
  json prices = json::array();
  for (const Rat& price : spec.piece_prices) prices.push_back(to_fraction_string(price));
  out["piece_prices"] = std::move(prices);
  return out;
}

inline json split_spec_to_json(const ConsortiumSplitSpec& spec) {
  json out;
  out["target"] = spec.target;
  json pass_prices = json::array();
  for (const Rat& price : spec.copy_pass_prices) pass_prices.push_back(to_fraction_string(price));
  out["copy_pass_prices"] = std::move(pass_prices);
  json museum_prices = json::array();
  for (const auto& copy : spec.copy_museum_prices) {
    json row = json::array();
    for (const Rat& price : copy) row.push_back(to_fraction_string(price));
    museum_prices.push_back(std::move(row));
  }
  out["copy_museum_prices"] = std::move(museum_prices);
  return out;
}
}  // namespace detail

/// Splitting-proofness of museums: splitting one museum into pieces with
/// prices summing to the original leaves every other museum's payout
/// unchanged.
inline CheckResult check_splitting_museums(Rule rule, const Problem& p,
                                           const MuseumSplitSpec& spec) {
  MuseumSplitResult split = split_museum(p, spec);
  Allocation before = allocate(rule, p);
  Allocation after = allocate(rule, split.problem);
  for (int j = 1; j <= p.museums; ++j) {
    if (j == spec.target) continue;
    if (before[j - 1] == after[j - 1]) continue;
    Witness w;
    w.rule = rule;
    w.axiom = Axiom::SplittingMuseums;
    w.problem = problem_to_json(p);
    w.transform["spec"] = detail::split_spec_to_json(spec);
    w.lhs = to_fraction_string(before[j - 1]);
    w.rhs = to_fraction_string(after[j - 1]);
    w.detail = "splitting museum " + std::to_string(spec.target) + " moved museum " +
               std::to_string(j) + "'s payout";
    return CheckResult::fail(std::move(w));
  }
  return CheckResult::pass();
}

/// Splitting-proofness of consortia: splitting one consortium into full
/// copies leaves every other consortium's aggregate payout unchanged.
inline CheckResult check_splitting_consortia(Rule rule, const Problem& p,
                                             const ConsortiumSplitSpec& spec) {
  ConsortiumSplitResult split = split_consortium(p, spec);
  Allocation before = allocate(rule, p);
  Allocation after = allocate(rule, split.problem);
  for (int k = 1; k <= consortium_count(p); ++k) {
    if (k == spec.target) continue;
    Rat lhs(0), rhs(0);
    for (int i : p.consortia[k - 1]) {
      lhs += before[i - 1];
      rhs += after[i - 1];  // untouched consortia keep their museum ids
    }
    if (lhs == rhs) continue;
    Witness w;
    w.rule = rule;
    w.axiom = Axiom::SplittingConsortia;
    w.problem = problem_to_json(p);
    w.transform["spec"] = detail::split_spec_to_json(spec);
    w.lhs = to_fraction_string(lhs);
    w.rhs = to_fraction_string(rhs);
    w.detail = "splitting consortium " + std::to_string(spec.target) + " moved consortium " +
               std::to_string(k) + "'s aggregate payout";
    return CheckResult::fail(std::move(w));
  }
  return CheckResult::pass();
}

/// Consortia consistency: on a general-pass-only problem, each consortium's
/// aggregate payout equals the payout of its stand-in museum in the reduced
/// problem.
inline CheckResult check_consortia_consistency(Rule rule, const Problem& p) {
  if (classify_subdomain(p).kind != SubdomainKind::GeneralOnly)
    throw std::invalid_argument("consortia-consistency: the problem must sell only general passes");
  Problem reduced = reduce_problem(p);
  Allocation a = allocate(rule, p);
  Allocation b = allocate(rule, reduced);
  for (int k = 1; k <= consortium_count(p); ++k) {
    Rat aggregate(0);
    for (int i : p.consortia[k - 1]) aggregate += a[i - 1];
    if (aggregate == b[k - 1]) continue;
    Witness w;
    w.rule = rule;
    w.axiom = Axiom::ConsortiaConsistency;
    w.problem = problem_to_json(p);
    w.lhs = to_fraction_string(aggregate);
    w.rhs = to_fraction_string(b[k - 1]);
    w.detail = "consortium " + std::to_string(k) +
               "'s aggregate differs from its reduced-problem payout";
    return CheckResult::fail(std::move(w));
  }
  return CheckResult::pass();
}

/// Re-runs the checker a witness came from. A faithful witness fails again.
inline CheckResult replay(const Witness& w) {
  Problem p = problem_from_json(w.problem);
  switch (w.axiom) {
    case Axiom::Composition: {
      Problem second = problem_from_json(w.transform.at("second_problem"));
      return check_composition(w.rule, p, second);
    }
    case Axiom::SymmetryWithin: {
      auto pair = w.transform.at("pair");
      return check_symmetry_within(w.rule, p, pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    case Axiom::SymmetryBetween: {
      auto pair = w.transform.at("pair");
      return check_symmetry_between(w.rule, p, pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    case Axiom::Dummy:
      return check_dummy(w.rule, p);
    case Axiom::SplittingMuseums: {
      const json& spec_json = w.transform.at("spec");
      MuseumSplitSpec spec;
      spec.target = spec_json.at("target").get<int>();
      for (const auto& price : spec_json.at("piece_prices"))
        spec.piece_prices.push_back(*parse_rational(price.get<std::string>()));
      return check_splitting_museums(w.rule, p, spec);
    }
    case Axiom::SplittingConsortia: {
      const json& spec_json = w.transform.at("spec");
      ConsortiumSplitSpec spec;
      spec.target = spec_json.at("target").get<int>();
      for (const auto& price : spec_json.at("copy_pass_prices"))
        spec.copy_pass_prices.push_back(*parse_rational(price.get<std::string>()));
      for (const auto& copy : spec_json.at("copy_museum_prices")) {
        std::vector<Rat> prices;
        for (const auto& price : copy) prices.push_back(*parse_rational(price.get<std::string>()));
        spec.copy_museum_prices.push_back(std::move(prices));
      }
      return check_splitting_consortia(w.rule, p, spec);
    }
    case Axiom::ConsortiaConsistency:
      return check_consortia_consistency(w.rule, p);
  }
  throw std::logic_error("replay: unhandled axiom");
}

// ---------------------------------------------------------------------------
// Audit-time instance preparation

namespace prep {

/// Splits the holders of every pass into two problems by a fair coin per
/// column. Prices and structure are shared, so the parts concatenate back.
inline std::pair<Problem, Problem> random_bipartition(const Problem& p, SplitMix64& rng) {
  Problem d1 = p;
  Problem d2 = p;
  for (auto& [id, pass] : p.passes) {
    Pass& a = d1.passes[id];
    Pass& b = d2.passes[id];
    a.holders.clear();
    a.visits.clear();
    b.holders.clear();
    b.visits.clear();
    if (!pass.sold()) continue;
    a.visits.assign(pass.visits.size(), {});
    b.visits.assign(pass.visits.size(), {});
    for (std::size_t c = 0; c < pass.holders.size(); ++c) {
      bool first = rng.chance(1, 2);
      Pass& side = first ? a : b;
      side.holders.push_back(pass.holders[c]);
      for (std::size_t r = 0; r < pass.visits.size(); ++r)
        side.visits[r].push_back(pass.visits[r][c]);
    }
    if (a.holders.empty()) a.visits.clear();
    if (b.holders.empty()) b.visits.clear();
  }
  return {std::move(d1), std::move(d2)};
}

/// Random positive rational partition of `total` into `pieces` parts, using
/// small integer weights so denominators stay compact.
inline std::vector<Rat> random_price_partition(const Rat& total, int pieces, SplitMix64& rng) {
  std::vector<long> weights(pieces);
  long sum = 0;
  for (long& w : weights) {
    w = rng.range(1, 6);
    sum += w;
  }
  std::vector<Rat> parts;
  parts.reserve(pieces);
  for (long w : weights) parts.push_back(total * make_rat(w, sum));
  return parts;
}

inline MuseumSplitSpec random_museum_split(const Problem& p, SplitMix64& rng) {
  MuseumSplitSpec spec;
  spec.target = rng.range(1, p.museums);
  int pieces = rng.range(2, 3);
  spec.piece_prices =
      random_price_partition(price_of(p, PassId::individual(spec.target)), pieces, rng);
  return spec;
}

inline ConsortiumSplitSpec random_consortium_split(const Problem& p, SplitMix64& rng) {
  ConsortiumSplitSpec spec;
  spec.target = rng.range(1, consortium_count(p));
  const std::vector<int>& block = p.consortia[spec.target - 1];
  int copies = rng.range(2, 3);
  if (block.size() == 1) {
    // a singleton's copies stay singletons, so the museum piece prices must
    // mirror the copy pass prices
    spec.copy_pass_prices =
        random_price_partition(price_of(p, PassId::consortium(spec.target)), copies, rng);
    for (const Rat& price : spec.copy_pass_prices) spec.copy_museum_prices.push_back({price});
    return spec;
  }
  spec.copy_pass_prices =
      random_price_partition(price_of(p, PassId::consortium(spec.target)), copies, rng);
  spec.copy_museum_prices.assign(copies, {});
  for (int museum : block) {
    std::vector<Rat> parts =
        random_price_partition(price_of(p, PassId::individual(museum)), copies, rng);
    for (int l = 0; l < copies; ++l) spec.copy_museum_prices[l].push_back(parts[l]);
  }
  return spec;
}

inline HolderId fresh_holder(std::set<HolderId>& used, long& counter) {
  for (;;) {
    HolderId candidate = "w" + std::to_string(counter++);
    if (!used.count(candidate)) {
      used.insert(candidate);
      return candidate;
    }
  }
}

/// Rewrites the problem so that some pair of museums in one consortium meets
/// the symmetry-within conditions: equal visit rows and equal individual
/// revenue (half the time via empty individual passes with unequal prices,
/// which is where non-symmetric rules come apart). Returns the pair, or
/// nullopt when every consortium is a singleton.
inline std::optional<std::pair<int, int>> make_symmetric_within(Problem& p, SplitMix64& rng) {
  std::vector<int> fat_blocks;
  for (int k = 1; k <= consortium_count(p); ++k)
    if (p.consortia[k - 1].size() >= 2) fat_blocks.push_back(k);
  if (fat_blocks.empty()) return std::nullopt;
  const int k = fat_blocks[rng.below(fat_blocks.size())];
  const std::vector<int>& block = p.consortia[k - 1];
  std::size_t pos_i = rng.below(block.size());
  std::size_t pos_j = rng.below(block.size() - 1);
  if (pos_j >= pos_i) ++pos_j;
  const int i = block[std::min(pos_i, pos_j)];
  const int j = block[std::max(pos_i, pos_j)];

  auto copy_rows = [&](PassId id) {
    Pass& pass = p.passes[id];
    if (!pass.sold()) return;
    const std::vector<int> rows = pass_rows(p, id);
    const std::size_t ri = detail::row_position(rows, i);
    const std::size_t rj = detail::row_position(rows, j);
    pass.visits[rj] = pass.visits[ri];
    for (std::size_t c = 0; c < pass.holders.size(); ++c) {
      bool any = false;
      for (const auto& row : pass.visits) any = any || row[c] == 1;
      if (!any) pass.visits[ri][c] = pass.visits[rj][c] = 1;
    }
  };
  copy_rows(PassId::general());
  copy_rows(PassId::consortium(k));

  // make the pair actually visited somewhere, so payouts can differ
  for (PassId id : {PassId::general(), PassId::consortium(k)}) {
    Pass& pass = p.passes[id];
    if (!pass.sold()) continue;
    const std::vector<int> rows = pass_rows(p, id);
    std::size_t c = rng.below(pass.holders.size());
    pass.visits[detail::row_position(rows, i)][c] = 1;
    pass.visits[detail::row_position(rows, j)][c] = 1;
    break;
  }

  Pass& ind_i = p.passes[PassId::individual(i)];
  Pass& ind_j = p.passes[PassId::individual(j)];
  if (rng.chance(1, 2)) {
    // empty individual passes; prices may stay unequal (0 = 0 either way)
    ind_i.holders.clear();
    ind_i.visits.clear();
    ind_j.holders.clear();
    ind_j.visits.clear();
    if (rng.chance(1, 2)) ind_j.price = ind_i.price;
  } else {
    // equalize prices and holder counts
    ind_j.price = ind_i.price;
    std::set<HolderId> used = detail::all_holder_ids(p);
    long counter = 1;
    while (ind_j.holders.size() > ind_i.holders.size()) {
      ind_j.holders.pop_back();
      if (!ind_j.holders.empty())
        ind_j.visits[0].pop_back();
      else
        ind_j.visits.clear();
    }
    while (ind_j.holders.size() < ind_i.holders.size()) {
      ind_j.holders.push_back(fresh_holder(used, counter));
      if (ind_j.visits.empty()) ind_j.visits.assign(1, {});
      ind_j.visits[0].push_back(1);
    }
  }
  return std::make_pair(i, j);
}

/// Rewrites the problem so that some pair of consortia meets the
/// symmetry-between conditions: every general-pass holder visits both or
/// neither, equal consortium revenue, equal aggregate individual revenue.
/// Consortium prices are left unequal half the time. Returns the pair, or
/// nullopt when there is a single consortium.
inline std::optional<std::pair<int, int>> make_symmetric_between(Problem& p, SplitMix64& rng) {
  const int s = consortium_count(p);
  if (s < 2) return std::nullopt;
  int r = rng.range(1, s);
  int t = rng.range(1, s - 1);
  if (t >= r) ++t;
  if (r > t) std::swap(r, t);

  // consortium revenue: empty both passes, optionally with equalized prices
  for (int k : {r, t}) {
    Pass& pass = p.passes[PassId::consortium(k)];
    pass.holders.clear();
    pass.visits.clear();
  }
  if (rng.chance(1, 2))
    p.passes[PassId::consortium(t)].price = p.passes[PassId::consortium(r)].price;

  // aggregate individual revenue: empty every individual pass in both blocks
  for (int k : {r, t})
    for (int i : p.consortia[k - 1]) {
      Pass& pass = p.passes[PassId::individual(i)];
      pass.holders.clear();
      pass.visits.clear();
    }

  // keep the singleton convention intact after price edits
  for (int k : {r, t})
    if (is_singleton_consortium(p, k))
      p.passes[PassId::individual(p.consortia[k - 1][0])].price =
          p.passes[PassId::consortium(k)].price;

  // every general-pass holder must visit both blocks or neither, and at
  // least one should visit both so stage-one weights bind
  Pass& general = p.passes[PassId::general()];
  if (general.sold()) {
    const std::vector<int> rows = pass_rows(p, PassId::general());
    auto visits_block = [&](int k, std::size_t c) {
      for (int i : p.consortia[k - 1])
        if (general.visits[detail::row_position(rows, i)][c]) return true;
      return false;
    };
    auto touch_block = [&](int k, std::size_t c) {
      const std::vector<int>& block = p.consortia[k - 1];
      int museum = block[rng.below(block.size())];
      general.visits[detail::row_position(rows, museum)][c] = 1;
    };
    std::size_t chosen = rng.below(general.holders.size());
    for (std::size_t c = 0; c < general.holders.size(); ++c) {
      bool in_r = visits_block(r, c);
      bool in_t = visits_block(t, c);
      if (c == chosen || (in_r && !in_t)) {
        if (!in_t) touch_block(t, c);
        if (!in_r) touch_block(r, c);
      } else if (in_t && !in_r) {
        touch_block(r, c);
      }
    }
  }
  return std::make_pair(r, t);
}

/// Turns one museum into a dummy: its individual pass is emptied and its
/// visit rows are cleared, moving stranded columns to another museum of the
/// block (or of M). Returns the museum, or nullopt for the degenerate
/// one-museum problem with no room to repair columns.
inline std::optional<int> force_dummy(Problem& p, SplitMix64& rng) {
  std::vector<int> preferred;
  for (int k = 1; k <= consortium_count(p); ++k)
    if (p.consortia[k - 1].size() >= 2)
      for (int i : p.consortia[k - 1]) preferred.push_back(i);
  int target;
  if (!preferred.empty()) {
    target = preferred[rng.below(preferred.size())];
  } else if (p.museums >= 2) {
    target = rng.range(1, p.museums);
  } else {
    return std::nullopt;
  }
  const int k = consortium_of(p, target);
  const std::vector<int>& block = p.consortia[k - 1];

  Pass& individual = p.passes[PassId::individual(target)];
  individual.holders.clear();
  individual.visits.clear();

  if (block.size() == 1) {
    Pass& consortium = p.passes[PassId::consortium(k)];
    consortium.holders.clear();
    consortium.visits.clear();
  } else {
    Pass& consortium = p.passes[PassId::consortium(k)];
    if (consortium.sold()) {
      const std::vector<int> rows = pass_rows(p, PassId::consortium(k));
      const std::size_t row = detail::row_position(rows, target);
      for (std::size_t c = 0; c < consortium.holders.size(); ++c) {
        if (!consortium.visits[row][c]) continue;
        consortium.visits[row][c] = 0;
        bool any = false;
        for (const auto& other : consortium.visits) any = any || other[c] == 1;
        if (!any) {
          std::size_t repair;
          do repair = rng.below(rows.size());
          while (repair == row);
          consortium.visits[repair][c] = 1;
        }
      }
    }
  }

  Pass& general = p.passes[PassId::general()];
  if (general.sold()) {
    const std::vector<int> rows = pass_rows(p, PassId::general());
    const std::size_t row = detail::row_position(rows, target);
    // stranded columns stay inside the target's block when it has company
    std::vector<std::size_t> repair_rows;
    if (block.size() >= 2) {
      for (int i : block)
        if (i != target) repair_rows.push_back(detail::row_position(rows, i));
    } else {
      for (std::size_t other = 0; other < rows.size(); ++other)
        if (other != row) repair_rows.push_back(other);
    }
    for (std::size_t c = 0; c < general.holders.size(); ++c) {
      if (!general.visits[row][c]) continue;
      general.visits[row][c] = 0;
      bool any = false;
      for (const auto& other : general.visits) any = any || other[c] == 1;
      if (!any) general.visits[repair_rows[rng.below(repair_rows.size())]][c] = 1;
    }
  }
  return target;
}

}  // namespace prep

// ---------------------------------------------------------------------------
// Randomized audits

struct AuditConfig {
  int instances = 200;
  std::uint64_t seed = 0;
  GenConfig gen;  // the per-instance seed is derived from `seed`
  int max_witnesses = 3;
};

struct AxiomStats {
  int checked = 0;
  int passed = 0;
  int failed = 0;
  int not_applicable = 0;
  std::vector<Witness> failures;  // capped at AuditConfig::max_witnesses
};

inline json gen_config_to_json(const GenConfig& cfg) {
  json out;
  out["museums"] = {cfg.museums_min, cfg.museums_max};
  out["consortia"] = {cfg.consortia_min, cfg.consortia_max};
  out["general_holders"] = {cfg.general_holders_min, cfg.general_holders_max};
  out["consortium_holders"] = {cfg.consortium_holders_min, cfg.consortium_holders_max};
  out["individual_holders"] = {cfg.individual_holders_min, cfg.individual_holders_max};
  out["price_numerator_max"] = cfg.price_numerator_max;
  out["price_denominator_max"] = cfg.price_denominator_max;
  out["density"] = std::to_string(cfg.density_num) + "/" + std::to_string(cfg.density_den);
  out["max_total_holders"] = cfg.max_total_holders;
  return out;
}

struct AuditReport {
  Rule rule = Rule::EE;
  AuditConfig config;
  std::map<Axiom, AxiomStats> stats;

  bool all_passed() const {
    for (const auto& [axiom, st] : stats)
      if (st.failed > 0) return false;
    return true;
  }

  json to_json() const {
    json out;
    out["meta"] = {{"tool", "passalloc"},
                   {"kind", "audit"},
                   {"rule", std::string(passalloc::to_string(rule))},
                   {"seed", config.seed},
                   {"instances", config.instances},
                   {"generator", gen_config_to_json(config.gen)}};
    json axioms = json::object();
    for (const auto& [axiom, st] : stats) {
      json entry;
      entry["checked"] = st.checked;
      entry["passed"] = st.passed;
      entry["failed"] = st.failed;
      entry["not_applicable"] = st.not_applicable;
      json failures = json::array();
      for (const auto& w : st.failures) failures.push_back(w.to_json());
      entry["failures"] = std::move(failures);
      axioms[std::string(passalloc::to_string(axiom))] = std::move(entry);
    }
    out["axioms"] = std::move(axioms);
    out["all_passed"] = all_passed();
    return out;
  }
};

/// Runs one axiom check against one generated instance, drawing any
/// transformation parameters (splits, pairs, bipartitions) from `rng`.
inline CheckResult run_axiom_on_instance(Rule rule, Axiom axiom, const Problem& base,
                                         SplitMix64& rng) {
  switch (axiom) {
    case Axiom::Composition: {
      auto [d1, d2] = prep::random_bipartition(base, rng);
      return check_composition(rule, d1, d2);
    }
    case Axiom::SymmetryWithin: {
      Problem q = base;
      prep::make_symmetric_within(q, rng);
      CheckResult combined = CheckResult::not_applicable("no applicable museum pair");
      for (int k = 1; k <= consortium_count(q); ++k) {
        const auto& block = q.consortia[k - 1];
        for (std::size_t a = 0; a < block.size(); ++a)
          for (std::size_t b = a + 1; b < block.size(); ++b) {
            CheckResult result = check_symmetry_within(rule, q, block[a], block[b]);
            if (result.failed()) return result;
            if (result.passed()) combined = CheckResult::pass();
          }
      }
      return combined;
    }
    case Axiom::SymmetryBetween: {
      Problem q = base;
      prep::make_symmetric_between(q, rng);
      CheckResult combined = CheckResult::not_applicable("no applicable consortium pair");
      const int s = consortium_count(q);
      for (int r = 1; r <= s; ++r)
        for (int t = r + 1; t <= s; ++t) {
          CheckResult result = check_symmetry_between(rule, q, r, t);
          if (result.failed()) return result;
          if (result.passed()) combined = CheckResult::pass();
        }
      return combined;
    }
    case Axiom::Dummy: {
      Problem q = base;
      if (rng.chance(2, 3)) prep::force_dummy(q, rng);
      if (dummy_set(q).empty()) return CheckResult::not_applicable("no dummy museum");
      return check_dummy(rule, q);
    }
    case Axiom::SplittingMuseums:
      return check_splitting_museums(rule, base, prep::random_museum_split(base, rng));
    case Axiom::SplittingConsortia:
      return check_splitting_consortia(rule, base, prep::random_consortium_split(base, rng));
    case Axiom::ConsortiaConsistency: {
      Problem q = restrict_to(base, PassId::general());
      if (!pass_at(q, PassId::general()).sold())
        return CheckResult::not_applicable("no general-pass holders");
      return check_consortia_consistency(rule, q);
    }
  }
  throw std::logic_error("run_axiom_on_instance: unhandled axiom");
}

/// Seeded randomized audit: `instances` generated problems, every selected
/// axiom checked on each with randomized transformation parameters. The
/// report is a deterministic function of (rule, config, axiom set).
inline AuditReport audit(Rule rule, const AuditConfig& config, const std::set<Axiom>& axioms) {
  AuditReport report;
  report.rule = rule;
  report.config = config;
  for (Axiom axiom : axioms) report.stats[axiom];

  SplitMix64 root(config.seed);
  for (int k = 0; k < config.instances; ++k) {
    const std::uint64_t instance_seed = root.next();
    GenConfig gen = config.gen;
    gen.seed = instance_seed;
    Problem base = generate(gen);
    for (Axiom axiom : axioms) {
      SplitMix64 rng(instance_seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<int>(axiom) + 1)));
      CheckResult result = run_axiom_on_instance(rule, axiom, base, rng);
      AxiomStats& st = report.stats[axiom];
      switch (result.status) {
        case CheckResult::Status::Passed:
          ++st.checked;
          ++st.passed;
          break;
        case CheckResult::Status::Failed:
          ++st.checked;
          ++st.failed;
          if (static_cast<int>(st.failures.size()) < config.max_witnesses)
            st.failures.push_back(*result.witness);
          break;
        case CheckResult::Status::NotApplicable:
          ++st.not_applicable;
          break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Independence witnesses

struct IndependencePair {
  Rule rule;
  Axiom violated;
};

/// The designated (rule, violated-axiom) pairs showing each theorem's axioms
/// independent.
inline std::vector<IndependencePair> theorem_independence_pairs(int theorem) {
  switch (theorem) {
    case 2:
      return {{Rule::R1, Axiom::Composition},
              {Rule::EP, Axiom::SymmetryWithin},
              {Rule::PE, Axiom::SymmetryBetween},
              {Rule::R2, Axiom::Dummy}};
    case 3:
      return {{Rule::R3, Axiom::Composition},
              {Rule::EP, Axiom::SplittingConsortia},
              {Rule::PE, Axiom::SplittingMuseums},
              {Rule::R4, Axiom::Dummy},
              {Rule::R5, Axiom::ConsortiaConsistency}};
    case 4:
      return {{Rule::R6, Axiom::Composition},
              {Rule::EE, Axiom::SplittingConsortia},
              {Rule::PP, Axiom::SymmetryWithin},
              {Rule::R7, Axiom::Dummy},
              {Rule::R8, Axiom::ConsortiaConsistency}};
    case 5:
      return {{Rule::R9, Axiom::Composition},
              {Rule::EE, Axiom::SplittingMuseums},
              {Rule::PP, Axiom::SymmetryBetween},
              {Rule::R10, Axiom::Dummy}};
    default:
      throw std::invalid_argument("theorem must be one of 2, 3, 4, 5");
  }
}

/// The rule each theorem characterizes.
inline Rule theorem_rule(int theorem) {
  switch (theorem) {
    case 2: return Rule::EE;
    case 3: return Rule::PP;
    case 4: return Rule::PE;
    case 5: return Rule::EP;
    default: throw std::invalid_argument("theorem must be one of 2, 3, 4, 5");
  }
}

struct SearchConfig {
  int budget = 500;             // instances searched per (rule, axiom) pair
  int satisfaction_sample = 25; // instances used to spot-check the other axioms
  std::uint64_t seed = 0;
  GenConfig gen;
};

struct IndependenceEntry {
  Rule rule = Rule::EE;
  Axiom axiom = Axiom::Composition;
  std::optional<Witness> witness;
  int instances_tried = 0;
  /// Spot-check of the theorem's other axioms on sampled instances; a false
  /// here is a discrepancy worth reporting, not silently absorbed.
  std::vector<std::pair<Axiom, bool>> others_satisfied;
};

struct IndependenceReport {
  int theorem = 2;
  SearchConfig config;
  std::vector<IndependenceEntry> entries;

  bool complete() const {
    for (const auto& entry : entries) {
      if (!entry.witness) return false;
      for (const auto& [axiom, ok] : entry.others_satisfied)
        if (!ok) return false;
    }
    return true;
  }

  json to_json() const {
    json out;
    out["meta"] = {{"tool", "passalloc"},
                   {"kind", "independence"},
                   {"theorem", theorem},
                   {"seed", config.seed},
                   {"budget", config.budget},
                   {"satisfaction_sample", config.satisfaction_sample},
                   {"generator", gen_config_to_json(config.gen)}};
    json entries_json = json::array();
    for (const auto& entry : entries) {
      json e;
      e["rule"] = std::string(passalloc::to_string(entry.rule));
      e["violated_axiom"] = std::string(passalloc::to_string(entry.axiom));
      e["instances_tried"] = entry.instances_tried;
      if (entry.witness)
        e["witness"] = entry.witness->to_json();
      else
        e["witness"] = nullptr;  // search exhausted, reported honestly
      json others = json::object();
      for (const auto& [axiom, ok] : entry.others_satisfied)
        others[std::string(passalloc::to_string(axiom))] = ok;
      e["others_satisfied"] = std::move(others);
      entries_json.push_back(std::move(e));
    }
    out["entries"] = std::move(entries_json);
    out["complete"] = complete();
    return out;
  }
};

/// For each designated (rule, axiom) pair of the theorem, searches seeded
/// instances for a violation of exactly that axiom and spot-checks that the
/// theorem's remaining axioms hold on a sample.
inline IndependenceReport independence_witnesses(int theorem, const SearchConfig& config) {
  IndependenceReport report;
  report.theorem = theorem;
  report.config = config;

  const std::set<Axiom> theorem_axioms = characteristic_axioms(theorem_rule(theorem));
  const std::vector<IndependencePair> pairs = theorem_independence_pairs(theorem);

  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    IndependenceEntry entry;
    entry.rule = pairs[pi].rule;
    entry.axiom = pairs[pi].violated;

    SplitMix64 root(config.seed ^ (0xc2b2ae3d27d4eb4fULL * (pi + 1)));
    for (int k = 0; k < config.budget && !entry.witness; ++k) {
      const std::uint64_t instance_seed = root.next();
      GenConfig gen = config.gen;
      gen.seed = instance_seed;
      Problem base = generate(gen);
      SplitMix64 rng(instance_seed ^
                     (0x9e3779b97f4a7c15ULL * (static_cast<int>(entry.axiom) + 1)));
      CheckResult result = run_axiom_on_instance(entry.rule, entry.axiom, base, rng);
      entry.instances_tried = k + 1;
      if (result.failed()) entry.witness = result.witness;
    }

    for (Axiom other : theorem_axioms) {
      if (other == entry.axiom) continue;
      bool ok = true;
      SplitMix64 sample_root(config.seed ^ (0xd6e8feb86659fd93ULL * (pi + 1)) ^
                             (0x9e3779b97f4a7c15ULL * (static_cast<int>(other) + 1)));
      for (int k = 0; k < config.satisfaction_sample && ok; ++k) {
        const std::uint64_t instance_seed = sample_root.next();
        GenConfig gen = config.gen;
        gen.seed = instance_seed;
        Problem base = generate(gen);
        SplitMix64 rng(instance_seed ^
                       (0x9e3779b97f4a7c15ULL * (static_cast<int>(other) + 1)));
        ok = !run_axiom_on_instance(entry.rule, other, base, rng).failed();
      }
      entry.others_satisfied.emplace_back(other, ok);
    }

    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace passalloc

#endif  // PASSALLOC_AXIOMS_HPP
