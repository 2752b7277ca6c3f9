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

#ifndef PASSALLOC_PROBLEM_HPP
#define PASSALLOC_PROBLEM_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "passalloc/rational.hpp"

namespace passalloc {

using HolderId = std::string;

/// Identifies one pass program. Negative sigma is the individual pass of
/// museum -sigma, zero is the general pass, positive sigma is the pass of
/// the consortium with that index.
class PassId {
 public:
  constexpr PassId() = default;

  static constexpr PassId general() { return PassId(0); }
  static constexpr PassId individual(int museum) { return PassId(-museum); }
  static constexpr PassId consortium(int index) { return PassId(index); }

  /// Validated construction from a raw sigma for a problem with
  /// `museum_count` museums and `consortium_count` consortia.
  static constexpr std::optional<PassId> from_sigma(int sigma, int museum_count,
                                                    int consortium_count) {
    if (sigma < -museum_count || sigma > consortium_count) return std::nullopt;
    return PassId(sigma);
  }

  constexpr int sigma() const { return sigma_; }
  constexpr bool is_general() const { return sigma_ == 0; }
  constexpr bool is_individual() const { return sigma_ < 0; }
  constexpr bool is_consortium() const { return sigma_ > 0; }
  /// Museum covered by an individual pass. Only meaningful when
  /// is_individual().
  constexpr int museum() const { return -sigma_; }
  /// Consortium index of a consortium pass. Only meaningful when
  /// is_consortium().
  constexpr int consortium_index() const { return sigma_; }

  friend constexpr auto operator<=>(PassId, PassId) = default;

 private:
  constexpr explicit PassId(int sigma) : sigma_(sigma) {}
  int sigma_ = 0;
};

/// One pass program: price, buyers (column order), and the binary visit
/// matrix. Rows follow the canonical row set of the pass in ascending museum
/// order; columns follow `holders`. An unsold pass has empty holders and an
/// empty matrix.
struct Pass {
  Rat price = Rat(0);
  std::vector<HolderId> holders;
  std::vector<std::vector<std::uint8_t>> visits;  // visits[row][col], 0/1

  bool sold() const { return !holders.empty(); }
};

/// A museum pass problem: museums 1..m, a partition of them into consortia,
/// and one pass entry per sigma in {-m..-1, 0, 1..s}. Values are treated as
/// immutable once validated; every operation in the library is pure.
struct Problem {
  int museums = 0;                          // m; museum ids are 1..m
  std::vector<std::vector<int>> consortia;  // P_1..P_s, each ascending
  std::map<PassId, Pass> passes;
};

inline int consortium_count(const Problem& p) {
  return static_cast<int>(p.consortia.size());
}

inline std::vector<PassId> all_pass_ids(const Problem& p) {
  std::vector<PassId> ids;
  ids.reserve(p.museums + 1 + p.consortia.size());
  for (int i = p.museums; i >= 1; --i) ids.push_back(PassId::individual(i));
  ids.push_back(PassId::general());
  for (int t = 1; t <= consortium_count(p); ++t) ids.push_back(PassId::consortium(t));
  return ids;
}

inline const Pass& pass_at(const Problem& p, PassId id) {
  auto it = p.passes.find(id);
  if (it == p.passes.end())
    throw std::invalid_argument("unknown pass sigma=" + std::to_string(id.sigma()));
  return it->second;
}

inline Rat price_of(const Problem& p, PassId id) { return pass_at(p, id).price; }

/// 1-based index of the consortium containing `museum`.
inline int consortium_of(const Problem& p, int museum) {
  for (std::size_t k = 0; k < p.consortia.size(); ++k)
    for (int i : p.consortia[k])
      if (i == museum) return static_cast<int>(k) + 1;
  throw std::invalid_argument("unknown museum id " + std::to_string(museum));
}

/// Canonical row labels of a pass matrix: the covered museums in ascending
/// order ({i} for individual passes, all of M for the general pass, P_t for
/// a consortium pass).
inline std::vector<int> pass_rows(const Problem& p, PassId id) {
  if (id.is_individual()) return {id.museum()};
  if (id.is_general()) {
    std::vector<int> rows(p.museums);
    for (int i = 0; i < p.museums; ++i) rows[i] = i + 1;
    return rows;
  }
  int t = id.consortium_index();
  if (t < 1 || t > consortium_count(p))
    throw std::invalid_argument("unknown consortium index " + std::to_string(t));
  return p.consortia[t - 1];
}

inline bool is_singleton_consortium(const Problem& p, int index) {
  return p.consortia.at(index - 1).size() == 1;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::ostringstream out;
    for (const auto& v : violations) {
      if (out.tellp() > 0) out << "; ";
      out << v.code << ": " << v.detail;
    }
    return out.str();
  }
};

/// Checks every structural invariant of a candidate problem. Violations are
/// returned as data; nothing is thrown.
inline ValidationReport validate(const Problem& p) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string detail) {
    report.violations.push_back({std::move(code), std::move(detail)});
  };

  if (p.museums < 1) {
    flag("museum count", "a problem needs at least one museum");
    return report;
  }
  if (p.consortia.empty()) {
    flag("partition coverage", "the consortium list is empty");
    return report;
  }

  // Partition: nonempty sorted blocks that tile 1..m exactly.
  std::vector<int> owner(p.museums + 1, 0);
  bool partition_ok = true;
  for (std::size_t k = 0; k < p.consortia.size(); ++k) {
    const auto& block = p.consortia[k];
    if (block.empty()) {
      flag("empty consortium block", "consortium " + std::to_string(k + 1));
      partition_ok = false;
      continue;
    }
    if (!std::is_sorted(block.begin(), block.end()) ||
        std::adjacent_find(block.begin(), block.end()) != block.end()) {
      flag("block order", "consortium " + std::to_string(k + 1) +
                              " must list distinct museums in ascending order");
      partition_ok = false;
    }
    for (int i : block) {
      if (i < 1 || i > p.museums) {
        flag("unknown museum", "consortium " + std::to_string(k + 1) +
                                   " references museum " + std::to_string(i));
        partition_ok = false;
      } else if (owner[i] != 0) {
        flag("partition coverage", "museum " + std::to_string(i) +
                                       " appears in consortia " + std::to_string(owner[i]) +
                                       " and " + std::to_string(k + 1));
        partition_ok = false;
      } else {
        owner[i] = static_cast<int>(k) + 1;
      }
    }
  }
  for (int i = 1; i <= p.museums; ++i)
    if (owner[i] == 0) {
      flag("partition coverage", "museum " + std::to_string(i) + " belongs to no consortium");
      partition_ok = false;
    }
  if (!partition_ok) return report;  // pass checks below assume a sane partition

  const int s = consortium_count(p);

  // Exactly one pass entry per sigma.
  for (PassId id : all_pass_ids(p))
    if (!p.passes.count(id)) flag("missing pass", "sigma=" + std::to_string(id.sigma()));
  for (const auto& [id, pass] : p.passes)
    if (!PassId::from_sigma(id.sigma(), p.museums, s))
      flag("unknown pass", "sigma=" + std::to_string(id.sigma()) + " is out of range");
  if (!report.ok()) return report;

  std::map<HolderId, int> seen_holder;  // holder -> sigma
  for (const auto& [id, pass] : p.passes) {
    const std::string where = "pass sigma=" + std::to_string(id.sigma());

    if (pass.price <= 0) flag("nonpositive price", where);

    const std::vector<int> rows = pass_rows(p, id);
    if (pass.holders.empty()) {
      if (!pass.visits.empty()) flag("matrix shape", where + ": unsold pass must have an empty matrix");
    } else {
      bool shape_ok = pass.visits.size() == rows.size();
      if (!shape_ok) {
        flag("matrix shape", where + ": expected " + std::to_string(rows.size()) + " rows, got " +
                                 std::to_string(pass.visits.size()));
      } else {
        for (std::size_t r = 0; r < pass.visits.size(); ++r)
          if (pass.visits[r].size() != pass.holders.size()) {
            flag("matrix shape", where + ": row for museum " + std::to_string(rows[r]) +
                                     " has the wrong number of columns");
            shape_ok = false;
          }
      }
      if (shape_ok) {
        for (std::size_t r = 0; r < pass.visits.size(); ++r)
          for (std::size_t c = 0; c < pass.visits[r].size(); ++c)
            if (pass.visits[r][c] > 1) {
              flag("matrix entry", where + ": entries must be 0 or 1");
              shape_ok = false;
            }
      }
      if (shape_ok) {
        for (std::size_t c = 0; c < pass.holders.size(); ++c) {
          bool any = false;
          for (std::size_t r = 0; r < pass.visits.size(); ++r) any = any || pass.visits[r][c] == 1;
          if (!any)
            flag("empty visit column", where + ": holder " + pass.holders[c] + " visits no museum");
        }
      }
    }

    for (const auto& h : pass.holders) {
      auto [it, inserted] = seen_holder.emplace(h, id.sigma());
      if (!inserted)
        flag("duplicate holder id", "holder " + h + " appears in passes sigma=" +
                                        std::to_string(it->second) + " and sigma=" +
                                        std::to_string(id.sigma()));
    }
  }

  // Singleton-consortium conventions.
  for (int t = 1; t <= s; ++t) {
    if (!is_singleton_consortium(p, t)) continue;
    int i = p.consortia[t - 1][0];
    const Pass& individual = pass_at(p, PassId::individual(i));
    const Pass& consortium = pass_at(p, PassId::consortium(t));
    if (individual.sold())
      flag("singleton holders convention",
           "museum " + std::to_string(i) + " forms consortium " + std::to_string(t) +
               " alone, so its individual pass must have no holders");
    if (individual.price != consortium.price)
      flag("singleton price convention",
           "museum " + std::to_string(i) + " forms consortium " + std::to_string(t) +
               " alone, so its individual price must equal the consortium price");
  }

  return report;
}

inline void require_valid(const Problem& p) {
  ValidationReport report = validate(p);
  if (!report.ok()) throw std::invalid_argument("invalid problem: " + report.summary());
}

// ---------------------------------------------------------------------------
// Revenue

/// Total revenue E from all pass sales.
inline Rat revenue(const Problem& p) {
  require_valid(p);
  Rat total(0);
  for (const auto& [id, pass] : p.passes)
    total += Rat(static_cast<unsigned long>(pass.holders.size())) * pass.price;
  return total;
}

// ---------------------------------------------------------------------------
// Derived indices

/// Precomputed visit indices of a valid problem: the consortium of each
/// museum, the visited set of each holder column, the consortia touched by
/// each general-pass holder, and per-museum visitor counts.
class ProblemIndex {
 public:
  struct Location {
    PassId pass;
    int column = 0;
  };

  explicit ProblemIndex(const Problem& p) : p_(&p) {
    consortium_of_.assign(p.museums + 1, 0);
    for (std::size_t k = 0; k < p.consortia.size(); ++k)
      for (int i : p.consortia[k]) consortium_of_[i] = static_cast<int>(k) + 1;

    for (const auto& [id, pass] : p.passes) {
      const std::vector<int> rows = pass_rows(p, id);
      auto& cols = visited_[id];
      cols.resize(pass.holders.size());
      for (std::size_t c = 0; c < pass.holders.size(); ++c) {
        for (std::size_t r = 0; r < pass.visits.size(); ++r)
          if (pass.visits[r][c]) {
            cols[c].push_back(rows[r]);
            ++visitor_count_[id][rows[r]];
          }
        locations_[pass.holders[c]] = Location{id, static_cast<int>(c)};
      }
      if (id.is_general()) {
        general_consortia_.resize(pass.holders.size());
        for (std::size_t c = 0; c < pass.holders.size(); ++c) {
          std::set<int> ks;
          for (int i : cols[c]) ks.insert(consortium_of_[i]);
          general_consortia_[c].assign(ks.begin(), ks.end());
        }
      }
    }
  }

  const Problem& problem() const { return *p_; }

  int consortium_of(int museum) const { return consortium_of_.at(museum); }

  const std::vector<int>& block(int index) const { return p_->consortia.at(index - 1); }

  /// M_a of the holder in the given column of the given pass (ascending).
  const std::vector<int>& visited(PassId id, int col) const {
    return visited_.at(id).at(col);
  }

  /// K^0_a of the general-pass holder in the given column (ascending).
  const std::vector<int>& consortia_visited(int col) const {
    return general_consortia_.at(col);
  }

  /// |N^sigma_i|: how many holders of the pass visited the museum.
  int visitor_count(PassId id, int museum) const {
    auto it = visitor_count_.find(id);
    if (it == visitor_count_.end()) return 0;
    auto jt = it->second.find(museum);
    return jt == it->second.end() ? 0 : jt->second;
  }

  std::optional<Location> find_holder(const HolderId& holder) const {
    auto it = locations_.find(holder);
    if (it == locations_.end()) return std::nullopt;
    return it->second;
  }

  /// M_a by holder id. Throws std::out_of_range for unknown holders.
  const std::vector<int>& visited_museums(const HolderId& holder) const {
    auto loc = find_holder(holder);
    if (!loc) throw std::out_of_range("unknown holder id " + holder);
    return visited(loc->pass, loc->column);
  }

  /// K^0_a by holder id; defined for general-pass holders only.
  const std::vector<int>& visited_consortia(const HolderId& holder) const {
    auto loc = find_holder(holder);
    if (!loc) throw std::out_of_range("unknown holder id " + holder);
    if (!loc->pass.is_general())
      throw std::invalid_argument("holder " + holder + " did not buy the general pass");
    return general_consortia_.at(loc->column);
  }

 private:
  const Problem* p_;
  std::vector<int> consortium_of_;
  std::map<PassId, std::vector<std::vector<int>>> visited_;
  std::vector<std::vector<int>> general_consortia_;
  std::map<PassId, std::map<int, int>> visitor_count_;
  std::map<HolderId, Location> locations_;
};

// ---------------------------------------------------------------------------
// Dummy museums and subdomains

/// NM(D): museums with no visitor under any pass that covers them.
inline std::set<int> dummy_set(const Problem& p) {
  require_valid(p);
  ProblemIndex ix(p);
  std::set<int> dummies;
  for (int i = 1; i <= p.museums; ++i) {
    int t = ix.consortium_of(i);
    bool visited = ix.visitor_count(PassId::individual(i), i) > 0 ||
                   ix.visitor_count(PassId::general(), i) > 0 ||
                   ix.visitor_count(PassId::consortium(t), i) > 0;
    if (!visited) dummies.insert(i);
  }
  return dummies;
}

enum class SubdomainKind {
  Mixed,             // passes of several kinds were sold
  GeneralOnly,       // D^0: only the general pass sold (possibly nothing)
  SingleConsortium,  // D^t: only consortium t's pass sold
  SingleMuseum,      // D^{-i}: only museum i's individual pass sold
};

struct Subdomain {
  SubdomainKind kind = SubdomainKind::Mixed;
  int index = 0;  // consortium index or museum id when applicable
};

inline Subdomain classify_subdomain(const Problem& p) {
  require_valid(p);
  std::vector<PassId> sold;
  for (const auto& [id, pass] : p.passes)
    if (pass.sold()) sold.push_back(id);
  if (sold.empty() || (sold.size() == 1 && sold[0].is_general()))
    return {SubdomainKind::GeneralOnly, 0};
  if (sold.size() == 1 && sold[0].is_consortium())
    return {SubdomainKind::SingleConsortium, sold[0].consortium_index()};
  if (sold.size() == 1 && sold[0].is_individual())
    return {SubdomainKind::SingleMuseum, sold[0].museum()};
  return {SubdomainKind::Mixed, 0};
}

}  // namespace passalloc

#endif  // PASSALLOC_PROBLEM_HPP
