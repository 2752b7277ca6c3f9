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

#ifndef PASSALLOC_RULES_HPP
#define PASSALLOC_RULES_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"

namespace passalloc {

/// The four two-stage rules plus the ten counterexample rules.
enum class Rule { EE, PP, PE, EP, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10 };

inline constexpr std::array<Rule, 14> kAllRules = {
    Rule::EE, Rule::PP, Rule::PE, Rule::EP, Rule::R1, Rule::R2, Rule::R3,
    Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R8, Rule::R9, Rule::R10};

inline std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::EE: return "ee";
    case Rule::PP: return "pp";
    case Rule::PE: return "pe";
    case Rule::EP: return "ep";
    case Rule::R1: return "r1";
    case Rule::R2: return "r2";
    case Rule::R3: return "r3";
    case Rule::R4: return "r4";
    case Rule::R5: return "r5";
    case Rule::R6: return "r6";
    case Rule::R7: return "r7";
    case Rule::R8: return "r8";
    case Rule::R9: return "r9";
    case Rule::R10: return "r10";
  }
  return "?";
}

inline std::optional<Rule> rule_from_string(std::string_view tag) {
  for (Rule rule : kAllRules)
    if (to_string(rule) == tag) return rule;
  return std::nullopt;
}

/// A payout per museum, index i-1 for museum i. Every rule produces
/// nonnegative payouts summing exactly to the problem revenue.
using Allocation = std::vector<Rat>;

namespace detail {

// Weight of one claimant among several, at one stage of a rule.
enum class Weights { Equal, IndividualPrice };
enum class StageOneWeights { Equal, ConsortiumPrice, BlockIndividualPriceSum };

inline Rat block_individual_price_sum(const Problem& p, const ProblemIndex& ix, int consortium) {
  Rat sum(0);
  for (int j : ix.block(consortium)) sum += price_of(p, PassId::individual(j));
  return sum;
}

// Visited museums of one general-pass column, grouped by consortium.
struct VisitGroup {
  int consortium = 0;
  std::vector<int> museums;
};

inline std::vector<VisitGroup> group_by_consortium(const ProblemIndex& ix,
                                                   const std::vector<int>& visited) {
  std::map<int, std::vector<int>> by_block;
  for (int i : visited) by_block[ix.consortium_of(i)].push_back(i);
  std::vector<VisitGroup> groups;
  groups.reserve(by_block.size());
  for (auto& [k, museums] : by_block) groups.push_back({k, std::move(museums)});
  return groups;
}

inline Rat stage_one_weight(const Problem& p, const ProblemIndex& ix, StageOneWeights mode,
                            const std::vector<VisitGroup>& groups, const VisitGroup& group) {
  switch (mode) {
    case StageOneWeights::Equal:
      return make_rat(1, static_cast<long>(groups.size()));
    case StageOneWeights::ConsortiumPrice: {
      Rat denom(0);
      for (const auto& g : groups) denom += price_of(p, PassId::consortium(g.consortium));
      return price_of(p, PassId::consortium(group.consortium)) / denom;
    }
    case StageOneWeights::BlockIndividualPriceSum: {
      Rat denom(0);
      for (const auto& g : groups) denom += block_individual_price_sum(p, ix, g.consortium);
      return block_individual_price_sum(p, ix, group.consortium) / denom;
    }
  }
  return Rat(0);
}

inline Rat share_weight(const Problem& p, Weights mode, const std::vector<int>& claimants,
                        int museum) {
  if (mode == Weights::Equal) return make_rat(1, static_cast<long>(claimants.size()));
  Rat denom(0);
  for (int j : claimants) denom += price_of(p, PassId::individual(j));
  return price_of(p, PassId::individual(museum)) / denom;
}

// General-pass term of the two-stage rules: stage one splits pi^0 across the
// visited consortia, stage two splits each consortium share across the
// visited museums inside it.
inline void add_general_two_stage(const Problem& p, const ProblemIndex& ix, StageOneWeights w1,
                                  Weights w2, Allocation& out) {
  const Pass& general = pass_at(p, PassId::general());
  for (std::size_t c = 0; c < general.holders.size(); ++c) {
    const std::vector<int>& visited = ix.visited(PassId::general(), static_cast<int>(c));
    const auto groups = group_by_consortium(ix, visited);
    for (const auto& group : groups) {
      Rat stage1 = stage_one_weight(p, ix, w1, groups, group);
      for (int i : group.museums)
        out[i - 1] += share_weight(p, w2, group.museums, i) * stage1 * general.price;
    }
  }
}

// R5's general-pass term ignores the consortium structure entirely: each fee
// is split across all visited museums in proportion to individual prices.
inline void add_general_flat_individual_price(const Problem& p, const ProblemIndex& ix,
                                              Allocation& out) {
  const Pass& general = pass_at(p, PassId::general());
  for (std::size_t c = 0; c < general.holders.size(); ++c) {
    const std::vector<int>& visited = ix.visited(PassId::general(), static_cast<int>(c));
    for (int i : visited)
      out[i - 1] += share_weight(p, Weights::IndividualPrice, visited, i) * general.price;
  }
}

// R10's general-pass term: stage one equal across visited consortia, stage
// two across every museum of the consortium (visited or not) in proportion
// to individual prices.
inline void add_general_whole_block(const Problem& p, const ProblemIndex& ix, Allocation& out) {
  const Pass& general = pass_at(p, PassId::general());
  for (std::size_t c = 0; c < general.holders.size(); ++c) {
    const std::vector<int>& ks = ix.consortia_visited(static_cast<int>(c));
    Rat stage1 = make_rat(1, static_cast<long>(ks.size()));
    for (int k : ks) {
      const std::vector<int>& block = ix.block(k);
      for (int i : block)
        out[i - 1] += share_weight(p, Weights::IndividualPrice, block, i) * stage1 * general.price;
    }
  }
}

// Consortium-pass term of the canonical rules: each fee is split across the
// museums the holder visited.
inline void add_consortium_per_holder(const Problem& p, const ProblemIndex& ix, Weights mode,
                                      Allocation& out) {
  for (int t = 1; t <= consortium_count(p); ++t) {
    const PassId id = PassId::consortium(t);
    const Pass& pass = pass_at(p, id);
    for (std::size_t c = 0; c < pass.holders.size(); ++c) {
      const std::vector<int>& visited = ix.visited(id, static_cast<int>(c));
      for (int i : visited)
        out[i - 1] += share_weight(p, mode, visited, i) * pass.price;
    }
  }
}

// R1/R6 consortium-pass term: the whole consortium revenue |N^t| pi^t is
// split across the block in proportion to total visit counts.
inline void add_consortium_visit_counts(const Problem& p, const ProblemIndex& ix,
                                        Allocation& out) {
  for (int t = 1; t <= consortium_count(p); ++t) {
    const PassId id = PassId::consortium(t);
    const Pass& pass = pass_at(p, id);
    if (!pass.sold()) continue;
    long total = 0;
    for (int i : ix.block(t)) total += ix.visitor_count(id, i);
    if (total == 0)
      throw std::domain_error("visit-count share undefined: consortium " + std::to_string(t) +
                              " sold passes but recorded no visits");
    Rat pot = Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
    for (int i : ix.block(t))
      out[i - 1] += Rat(ix.visitor_count(id, i)) / Rat(total) * pot;
  }
}

// R3/R9 consortium-pass term: the consortium revenue is split in proportion
// to individual prices, restricted to museums with at least one visitor.
inline void add_consortium_indicator_price(const Problem& p, const ProblemIndex& ix,
                                           Allocation& out) {
  for (int t = 1; t <= consortium_count(p); ++t) {
    const PassId id = PassId::consortium(t);
    const Pass& pass = pass_at(p, id);
    if (!pass.sold()) continue;
    std::vector<int> visited;
    for (int i : ix.block(t))
      if (ix.visitor_count(id, i) > 0) visited.push_back(i);
    Rat pot = Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
    for (int i : visited)
      out[i - 1] += share_weight(p, Weights::IndividualPrice, visited, i) * pot;
  }
}

// R4 consortium-pass term: every museum of the block shares each fee in
// proportion to individual prices, visited or not.
inline void add_consortium_whole_block_price(const Problem& p, const ProblemIndex& ix,
                                             Allocation& out) {
  for (int t = 1; t <= consortium_count(p); ++t) {
    const Pass& pass = pass_at(p, PassId::consortium(t));
    if (!pass.sold()) continue;
    Rat pot = Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
    const std::vector<int>& block = ix.block(t);
    for (int i : block)
      out[i - 1] += share_weight(p, Weights::IndividualPrice, block, i) * pot;
  }
}

// R7 consortium-pass term: every museum of the block gets an equal cut of
// each fee, visited or not.
inline void add_consortium_whole_block_equal(const Problem& p, const ProblemIndex& ix,
                                             Allocation& out) {
  for (int t = 1; t <= consortium_count(p); ++t) {
    const Pass& pass = pass_at(p, PassId::consortium(t));
    if (!pass.sold()) continue;
    Rat pot = Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
    const std::vector<int>& block = ix.block(t);
    for (int i : block)
      out[i - 1] += pot / Rat(static_cast<unsigned long>(block.size()));
  }
}

inline void add_individual_terms(const Problem& p, Allocation& out) {
  for (int i = 1; i <= p.museums; ++i) {
    const Pass& pass = pass_at(p, PassId::individual(i));
    out[i - 1] += Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
  }
}

}  // namespace detail

/// Evaluates any of the fourteen rules on a valid problem. Throws
/// std::invalid_argument when the problem fails validation.
inline Allocation allocate(Rule rule, const Problem& p) {
  require_valid(p);
  ProblemIndex ix(p);
  Allocation out(p.museums, Rat(0));
  using namespace detail;

  switch (rule) {
    case Rule::EE:
      add_general_two_stage(p, ix, StageOneWeights::Equal, Weights::Equal, out);
      add_consortium_per_holder(p, ix, Weights::Equal, out);
      add_individual_terms(p, out);
      break;
    case Rule::PP:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::IndividualPrice, out);
      add_consortium_per_holder(p, ix, Weights::IndividualPrice, out);
      add_individual_terms(p, out);
      break;
    case Rule::PE:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::Equal, out);
      add_consortium_per_holder(p, ix, Weights::Equal, out);
      add_individual_terms(p, out);
      break;
    case Rule::EP:
      add_general_two_stage(p, ix, StageOneWeights::Equal, Weights::IndividualPrice, out);
      add_consortium_per_holder(p, ix, Weights::IndividualPrice, out);
      add_individual_terms(p, out);
      break;
    case Rule::R1:
      add_general_two_stage(p, ix, StageOneWeights::Equal, Weights::Equal, out);
      add_consortium_visit_counts(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R2: {
      Rat total = revenue(p);
      Rat s(static_cast<unsigned long>(consortium_count(p)));
      for (int i = 1; i <= p.museums; ++i) {
        Rat block_size(static_cast<unsigned long>(ix.block(ix.consortium_of(i)).size()));
        out[i - 1] = total / (s * block_size);
      }
      break;
    }
    case Rule::R3:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::IndividualPrice, out);
      add_consortium_indicator_price(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R4:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::IndividualPrice, out);
      add_consortium_whole_block_price(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R5:
      add_general_flat_individual_price(p, ix, out);
      add_consortium_per_holder(p, ix, Weights::IndividualPrice, out);
      add_individual_terms(p, out);
      break;
    case Rule::R6:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::Equal, out);
      add_consortium_visit_counts(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R7:
      add_general_two_stage(p, ix, StageOneWeights::ConsortiumPrice, Weights::Equal, out);
      add_consortium_whole_block_equal(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R8:
      add_general_two_stage(p, ix, StageOneWeights::BlockIndividualPriceSum, Weights::Equal, out);
      add_consortium_per_holder(p, ix, Weights::IndividualPrice, out);
      add_individual_terms(p, out);
      break;
    case Rule::R9:
      add_general_two_stage(p, ix, StageOneWeights::Equal, Weights::IndividualPrice, out);
      add_consortium_indicator_price(p, ix, out);
      add_individual_terms(p, out);
      break;
    case Rule::R10:
      add_general_whole_block(p, ix, out);
      add_consortium_per_holder(p, ix, Weights::IndividualPrice, out);
      add_individual_terms(p, out);
      break;
  }
  return out;
}

}  // namespace passalloc

#endif  // PASSALLOC_RULES_HPP
