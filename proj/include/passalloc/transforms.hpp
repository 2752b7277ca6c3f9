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

#ifndef PASSALLOC_TRANSFORMS_HPP
#define PASSALLOC_TRANSFORMS_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"

namespace passalloc {

namespace detail {

inline std::set<HolderId> all_holder_ids(const Problem& p) {
  std::set<HolderId> ids;
  for (const auto& [sigma, pass] : p.passes) ids.insert(pass.holders.begin(), pass.holders.end());
  return ids;
}

// Fresh id for a duplicated holder, stable across runs: base id plus the tag
// of the entity the duplicate belongs to.
inline HolderId derive_holder_id(const HolderId& base, int tag, std::set<HolderId>& used) {
  HolderId candidate = base + "@" + std::to_string(tag);
  while (used.count(candidate)) candidate += "+";
  used.insert(candidate);
  return candidate;
}

inline std::vector<HolderId> duplicate_holders(const std::vector<HolderId>& holders, int tag,
                                               std::set<HolderId>& used) {
  std::vector<HolderId> out;
  out.reserve(holders.size());
  for (const auto& h : holders) out.push_back(derive_holder_id(h, tag, used));
  return out;
}

inline std::vector<std::vector<std::uint8_t>> all_ones_matrix(std::size_t cols) {
  if (cols == 0) return {};
  return {std::vector<std::uint8_t>(cols, 1)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Concatenation (the composition axiom's pooled problem)

/// Pools two problems over the same market: identical museums, consortia and
/// prices, disjoint holder sets. Holder sets are unioned and the matrices
/// column-concatenated.
inline Problem concat(const Problem& a, const Problem& b) {
  require_valid(a);
  require_valid(b);
  if (a.museums != b.museums || a.consortia != b.consortia)
    throw std::invalid_argument("concat: problems must share museums and consortia");
  for (const auto& [id, pass] : a.passes)
    if (pass.price != pass_at(b, id).price)
      throw std::invalid_argument("concat: problems must share pass prices (sigma=" +
                                  std::to_string(id.sigma()) + ")");
  std::set<HolderId> ids = detail::all_holder_ids(a);
  for (const auto& h : detail::all_holder_ids(b))
    if (ids.count(h)) throw std::invalid_argument("concat: holder " + h + " appears in both problems");

  Problem out = a;
  for (auto& [id, pass] : out.passes) {
    const Pass& other = pass_at(b, id);
    if (!other.sold()) continue;
    if (!pass.sold()) {
      pass.holders = other.holders;
      pass.visits = other.visits;
      continue;
    }
    pass.holders.insert(pass.holders.end(), other.holders.begin(), other.holders.end());
    for (std::size_t r = 0; r < pass.visits.size(); ++r)
      pass.visits[r].insert(pass.visits[r].end(), other.visits[r].begin(), other.visits[r].end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Museum splits

/// Replaces one museum by several pieces inside its consortium. Piece prices
/// must be positive and sum exactly to the original individual price; every
/// piece inherits the target's visits, and the individual-pass holder set is
/// duplicated onto each piece.
struct MuseumSplitSpec {
  int target = 0;
  std::vector<Rat> piece_prices;
};

struct MuseumSplitResult {
  Problem problem;
  /// Ids of the pieces in the new problem. The first piece keeps the
  /// target's id; the rest are appended after the old museum count, so every
  /// other museum keeps its id.
  std::vector<int> piece_ids;
};

inline MuseumSplitResult split_museum(const Problem& p, const MuseumSplitSpec& spec) {
  require_valid(p);
  if (spec.target < 1 || spec.target > p.museums)
    throw std::invalid_argument("split spec: unknown museum " + std::to_string(spec.target));
  const int r = static_cast<int>(spec.piece_prices.size());
  if (r < 2) throw std::invalid_argument("split spec: a museum splits into at least two pieces");
  Rat sum(0);
  for (const Rat& price : spec.piece_prices) {
    if (price <= 0) throw std::invalid_argument("split spec: piece prices must be positive");
    sum += price;
  }
  if (sum != price_of(p, PassId::individual(spec.target)))
    throw std::invalid_argument(
        "split spec: piece prices must sum to the original individual price");

  const int target = spec.target;
  const int k = consortium_of(p, target);

  std::vector<int> piece_ids{target};
  for (int h = 1; h < r; ++h) piece_ids.push_back(p.museums + h);

  Problem out;
  out.museums = p.museums + r - 1;
  out.consortia = p.consortia;
  for (int h = 1; h < r; ++h) out.consortia[k - 1].push_back(piece_ids[h]);
  // appended ids exceed every existing id, so blocks stay ascending

  std::set<HolderId> used = detail::all_holder_ids(p);

  // Individual passes: the first piece keeps the original holders, later
  // pieces carry duplicated holder sets under fresh ids.
  const Pass& target_pass = pass_at(p, PassId::individual(target));
  for (int i = 1; i <= p.museums; ++i)
    if (i != target) out.passes[PassId::individual(i)] = pass_at(p, PassId::individual(i));
  for (int h = 0; h < r; ++h) {
    Pass piece;
    piece.price = spec.piece_prices[h];
    piece.holders = h == 0 ? target_pass.holders
                           : detail::duplicate_holders(target_pass.holders, piece_ids[h], used);
    piece.visits = detail::all_ones_matrix(piece.holders.size());
    out.passes[PassId::individual(piece_ids[h])] = std::move(piece);
  }

  // Row-extending matrices: pieces inherit the target's row.
  auto extend_rows = [&](PassId id, const Pass& pass) {
    Pass copy = pass;
    if (!pass.sold()) return copy;
    const std::vector<int> rows = pass_rows(p, id);
    std::size_t target_row = 0;
    while (rows[target_row] != target) ++target_row;
    for (int h = 1; h < r; ++h) copy.visits.push_back(pass.visits[target_row]);
    // new rows land at the end, matching the appended ascending ids
    return copy;
  };

  out.passes[PassId::general()] = extend_rows(PassId::general(), pass_at(p, PassId::general()));
  for (int t = 1; t <= consortium_count(p); ++t) {
    const Pass& pass = pass_at(p, PassId::consortium(t));
    out.passes[PassId::consortium(t)] =
        t == k ? extend_rows(PassId::consortium(t), pass) : pass;
  }

  require_valid(out);
  return {std::move(out), std::move(piece_ids)};
}

// ---------------------------------------------------------------------------
// Consortium splits

/// Replaces one consortium by several full copies. Copy pass prices must sum
/// to the original consortium price; for each museum of the block, the copy
/// piece prices must sum to that museum's individual price. Consortium and
/// individual holder sets are duplicated onto every copy, and general-pass
/// visits are mirrored onto each copy's museums.
struct ConsortiumSplitSpec {
  int target = 0;
  std::vector<Rat> copy_pass_prices;                 // one per copy
  std::vector<std::vector<Rat>> copy_museum_prices;  // [copy][position in block]
};

struct ConsortiumSplitResult {
  Problem problem;
  /// Consortium indices of the copies. The first copy keeps the target's
  /// slot; the rest are appended, so other consortia keep their indices.
  std::vector<int> copy_indices;
  /// Museum ids per copy, in block-position order. The first copy keeps the
  /// original ids.
  std::vector<std::vector<int>> copy_museum_ids;
};

inline ConsortiumSplitResult split_consortium(const Problem& p, const ConsortiumSplitSpec& spec) {
  require_valid(p);
  const int s = consortium_count(p);
  if (spec.target < 1 || spec.target > s)
    throw std::invalid_argument("split spec: unknown consortium " + std::to_string(spec.target));
  const int t = static_cast<int>(spec.copy_pass_prices.size());
  if (t < 2) throw std::invalid_argument("split spec: a consortium splits into at least two copies");
  const std::vector<int>& block = p.consortia[spec.target - 1];
  const int r = static_cast<int>(block.size());
  if (static_cast<int>(spec.copy_museum_prices.size()) != t)
    throw std::invalid_argument("split spec: one museum price list per copy expected");

  Rat pass_sum(0);
  for (const Rat& price : spec.copy_pass_prices) {
    if (price <= 0) throw std::invalid_argument("split spec: copy pass prices must be positive");
    pass_sum += price;
  }
  if (pass_sum != price_of(p, PassId::consortium(spec.target)))
    throw std::invalid_argument("split spec: copy pass prices must sum to the consortium price");
  for (int h = 0; h < r; ++h) {
    Rat museum_sum(0);
    for (int l = 0; l < t; ++l) {
      if (static_cast<int>(spec.copy_museum_prices[l].size()) != r)
        throw std::invalid_argument("split spec: museum price list must cover the whole block");
      if (spec.copy_museum_prices[l][h] <= 0)
        throw std::invalid_argument("split spec: museum piece prices must be positive");
      museum_sum += spec.copy_museum_prices[l][h];
    }
    if (museum_sum != price_of(p, PassId::individual(block[h])))
      throw std::invalid_argument("split spec: piece prices of museum " + std::to_string(block[h]) +
                                  " must sum to its individual price");
  }
  if (r == 1)
    for (int l = 0; l < t; ++l)
      if (spec.copy_museum_prices[l][0] != spec.copy_pass_prices[l])
        throw std::invalid_argument(
            "split spec: copies of a one-museum consortium must price the museum at the copy "
            "pass price");

  std::vector<int> copy_indices{spec.target};
  for (int l = 1; l < t; ++l) copy_indices.push_back(s + l);
  std::vector<std::vector<int>> copy_museum_ids{block};
  for (int l = 1; l < t; ++l) {
    std::vector<int> ids;
    for (int h = 0; h < r; ++h) ids.push_back(p.museums + (l - 1) * r + h + 1);
    copy_museum_ids.push_back(std::move(ids));
  }

  Problem out;
  out.museums = p.museums + (t - 1) * r;
  out.consortia = p.consortia;
  for (int l = 1; l < t; ++l) out.consortia.push_back(copy_museum_ids[l]);

  std::set<HolderId> used = detail::all_holder_ids(p);

  // Individual passes.
  for (int i = 1; i <= p.museums; ++i) {
    bool in_block = false;
    for (int j : block) in_block = in_block || j == i;
    if (!in_block) out.passes[PassId::individual(i)] = pass_at(p, PassId::individual(i));
  }
  for (int h = 0; h < r; ++h) {
    const Pass& original = pass_at(p, PassId::individual(block[h]));
    for (int l = 0; l < t; ++l) {
      Pass piece;
      piece.price = spec.copy_museum_prices[l][h];
      piece.holders = l == 0 ? original.holders
                             : detail::duplicate_holders(original.holders,
                                                         copy_museum_ids[l][h], used);
      piece.visits = detail::all_ones_matrix(piece.holders.size());
      out.passes[PassId::individual(copy_museum_ids[l][h])] = std::move(piece);
    }
  }

  // Consortium passes.
  const Pass& target_pass = pass_at(p, PassId::consortium(spec.target));
  for (int k = 1; k <= s; ++k)
    if (k != spec.target) out.passes[PassId::consortium(k)] = pass_at(p, PassId::consortium(k));
  for (int l = 0; l < t; ++l) {
    Pass copy;
    copy.price = spec.copy_pass_prices[l];
    copy.holders = l == 0 ? target_pass.holders
                          : detail::duplicate_holders(target_pass.holders, copy_indices[l], used);
    copy.visits = target_pass.visits;  // rows correspond by block position
    out.passes[PassId::consortium(copy_indices[l])] = std::move(copy);
  }

  // General pass: every copy's museums inherit the original block rows.
  {
    const Pass& general = pass_at(p, PassId::general());
    Pass copy = general;
    if (general.sold()) {
      const std::vector<int> rows = pass_rows(p, PassId::general());
      std::vector<std::size_t> block_rows;
      for (int h = 0; h < r; ++h) {
        std::size_t row = 0;
        while (rows[row] != block[h]) ++row;
        block_rows.push_back(row);
      }
      for (int l = 1; l < t; ++l)
        for (int h = 0; h < r; ++h) copy.visits.push_back(general.visits[block_rows[h]]);
      // copy ids are assigned in ascending order block-by-block, matching the
      // appended row order
    }
    out.passes[PassId::general()] = std::move(copy);
  }

  require_valid(out);
  return {std::move(out), std::move(copy_indices), std::move(copy_museum_ids)};
}

// ---------------------------------------------------------------------------
// Reduction (consortia consistency) and restriction

/// The reduced problem of a general-pass-only problem: each consortium
/// becomes a single museum priced at the consortium price, and a holder
/// visits it iff they visited any museum of the block.
inline Problem reduce_problem(const Problem& p) {
  require_valid(p);
  if (classify_subdomain(p).kind != SubdomainKind::GeneralOnly)
    throw std::invalid_argument("reduce: the problem must sell only general passes");

  const int s = consortium_count(p);
  Problem out;
  out.museums = s;
  for (int k = 1; k <= s; ++k) out.consortia.push_back({k});

  for (int k = 1; k <= s; ++k) {
    Pass individual;
    individual.price = price_of(p, PassId::consortium(k));
    out.passes[PassId::individual(k)] = individual;
    Pass consortium;
    consortium.price = individual.price;
    out.passes[PassId::consortium(k)] = std::move(consortium);
  }

  const Pass& general = pass_at(p, PassId::general());
  Pass reduced;
  reduced.price = general.price;
  reduced.holders = general.holders;
  if (general.sold()) {
    reduced.visits.assign(s, std::vector<std::uint8_t>(general.holders.size(), 0));
    const std::vector<int> rows = pass_rows(p, PassId::general());
    for (std::size_t row = 0; row < rows.size(); ++row) {
      int k = consortium_of(p, rows[row]);
      for (std::size_t c = 0; c < general.holders.size(); ++c)
        if (general.visits[row][c]) reduced.visits[k - 1][c] = 1;
    }
  }
  out.passes[PassId::general()] = std::move(reduced);

  require_valid(out);
  return out;
}

/// Empties every holder set except the chosen pass (the per-pass problems of
/// the decomposition argument).
inline Problem restrict_to(const Problem& p, PassId keep) {
  require_valid(p);
  if (!p.passes.count(keep))
    throw std::invalid_argument("restrict: unknown pass sigma=" + std::to_string(keep.sigma()));
  Problem out = p;
  for (auto& [id, pass] : out.passes) {
    if (id == keep) continue;
    pass.holders.clear();
    pass.visits.clear();
  }
  return out;
}

}  // namespace passalloc

#endif  // PASSALLOC_TRANSFORMS_HPP
