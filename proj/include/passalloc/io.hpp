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

#ifndef PASSALLOC_IO_HPP
#define PASSALLOC_IO_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "passalloc/problem.hpp"
#include "passalloc/rational.hpp"

namespace passalloc {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<std::string> diagnostics)
      : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& lines) {
    std::ostringstream out;
    for (const auto& line : lines) {
      if (out.tellp() > 0) out << "\n";
      out << line;
    }
    return out.str();
  }
  std::vector<std::string> diagnostics_;
};

struct ParseOptions {
  /// Repair singleton-consortium passes instead of rejecting them: the
  /// individual pass price is forced to the consortium price and any
  /// individual-pass holders are moved into the consortium pass. Lossy when
  /// the two prices differ, hence off by default.
  bool normalize_singletons = false;
};

// ---------------------------------------------------------------------------
// Serialization

/// Canonical JSON form: every pass appears with its price in ascending sigma
/// order; empty holder lists and matrices are omitted; rationals render in
/// lowest terms.
inline json problem_to_json(const Problem& p) {
  json out;
  out["museums"] = p.museums;
  out["consortia"] = p.consortia;
  json passes = json::array();
  for (PassId id : all_pass_ids(p)) {
    const Pass& pass = pass_at(p, id);
    json entry;
    entry["sigma"] = id.sigma();
    entry["price"] = to_fraction_string(pass.price);
    if (pass.sold()) {
      entry["holders"] = pass.holders;
      json visits;
      visits["rows"] = pass_rows(p, id);
      json matrix = json::array();
      for (const auto& row : pass.visits) {
        json cells = json::array();
        for (std::uint8_t cell : row) cells.push_back(static_cast<int>(cell));
        matrix.push_back(std::move(cells));
      }
      visits["matrix"] = std::move(matrix);
      entry["visits"] = std::move(visits);
    }
    passes.push_back(std::move(entry));
  }
  out["passes"] = std::move(passes);
  return out;
}

inline std::string serialize_problem(const Problem& p) { return problem_to_json(p).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::optional<HolderId> holder_from_json(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  return std::nullopt;
}

inline std::optional<Rat> price_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  // Integers are exact in JSON; non-integral numbers are not accepted, to
  // keep prices away from binary floating point.
  if (value.is_number_integer()) return Rat(static_cast<long>(value.get<long long>()));
  return std::nullopt;
}

}  // namespace detail

/// Parses the problem file format. On success the returned problem has
/// passed validation; otherwise the diagnostics name the offending field or
/// the violated convention.
inline std::pair<std::optional<Problem>, std::vector<std::string>> try_problem_from_json(
    const json& root, const ParseOptions& options = {}) {
  std::vector<std::string> diags;
  auto fail = [&diags](const std::string& message) { diags.push_back(message); };

  if (!root.is_object()) return {std::nullopt, {"top level: expected a JSON object"}};
  if (!root.contains("museums") || !root["museums"].is_number_integer())
    fail("museums: expected an integer museum count");
  if (!root.contains("consortia") || !root["consortia"].is_array())
    fail("consortia: expected a list of museum-id lists");
  if (root.contains("passes") && !root["passes"].is_array())
    fail("passes: expected a list of pass objects");
  for (const auto& [key, value] : root.items())
    if (key != "museums" && key != "consortia" && key != "passes")
      fail(key + ": unknown top-level key");
  if (!diags.empty()) return {std::nullopt, diags};

  Problem p;
  p.museums = root["museums"].get<int>();
  if (p.museums < 1) return {std::nullopt, {"museums: must be at least 1"}};

  for (const auto& block : root["consortia"]) {
    if (!block.is_array()) return {std::nullopt, {"consortia: each block must be a list"}};
    std::vector<int> ids;
    for (const auto& id : block) {
      if (!id.is_number_integer()) return {std::nullopt, {"consortia: museum ids must be integers"}};
      ids.push_back(id.get<int>());
    }
    std::sort(ids.begin(), ids.end());
    p.consortia.push_back(std::move(ids));
  }
  const int s = static_cast<int>(p.consortia.size());

  std::map<int, json> given;
  if (root.contains("passes")) {
    for (const auto& entry : root["passes"]) {
      if (!entry.is_object() || !entry.contains("sigma") || !entry["sigma"].is_number_integer()) {
        fail("passes: each entry needs an integer sigma");
        continue;
      }
      int sigma = entry["sigma"].get<int>();
      if (!PassId::from_sigma(sigma, p.museums, s)) {
        fail("passes: sigma=" + std::to_string(sigma) + " is out of range for this problem");
        continue;
      }
      if (given.count(sigma)) {
        fail("passes: sigma=" + std::to_string(sigma) + " appears twice");
        continue;
      }
      given[sigma] = entry;
    }
  }
  if (!diags.empty()) return {std::nullopt, diags};

  // Passes may be omitted entirely only when the price is recoverable from
  // the singleton-consortium convention; prices of unsold passes still feed
  // the proportional rules, so they must be declared.
  for (PassId id : all_pass_ids(Problem{p.museums, p.consortia, {}})) {
    auto it = given.find(id.sigma());
    Pass pass;
    if (it == given.end()) {
      if (id.is_individual()) {
        int museum = id.museum();
        bool recoverable = false;
        for (int t = 1; t <= s && !recoverable; ++t)
          if (p.consortia[t - 1].size() == 1 && p.consortia[t - 1][0] == museum &&
              given.count(t)) {
            auto price = detail::price_from_json(given[t].contains("price") ? given[t]["price"]
                                                                            : json());
            if (price) {
              pass.price = *price;
              recoverable = true;
            }
          }
        if (!recoverable)
          fail("passes: sigma=" + std::to_string(id.sigma()) +
               " omitted, but its price is not recoverable (omitted passes imply empty holder "
               "sets, prices must still be declared)");
      } else {
        fail("passes: sigma=" + std::to_string(id.sigma()) +
             " omitted, but its price is not recoverable (omitted passes imply empty holder "
             "sets, prices must still be declared)");
      }
      p.passes[id] = std::move(pass);
      continue;
    }

    const json& entry = it->second;
    const std::string where = "pass sigma=" + std::to_string(id.sigma());
    for (const auto& [key, value] : entry.items())
      if (key != "sigma" && key != "price" && key != "holders" && key != "visits")
        fail(where + ": unknown key " + key);

    if (!entry.contains("price")) {
      fail(where + ": missing price");
    } else if (auto price = detail::price_from_json(entry["price"])) {
      pass.price = *price;
    } else {
      fail(where + ": price must be a decimal or fraction string (floats are rejected to keep "
                   "prices exact)");
    }

    if (entry.contains("holders")) {
      if (!entry["holders"].is_array()) {
        fail(where + ": holders must be a list");
      } else {
        for (const auto& holder : entry["holders"]) {
          auto id_text = detail::holder_from_json(holder);
          if (!id_text) {
            fail(where + ": holder ids must be strings or integers");
            break;
          }
          pass.holders.push_back(*id_text);
        }
      }
    }

    if (entry.contains("visits") && !entry["visits"].is_null()) {
      const json& visits = entry["visits"];
      if (!visits.is_object() || !visits.contains("rows") || !visits.contains("matrix")) {
        fail(where + ": visits needs rows and matrix");
      } else {
        std::vector<int> declared;
        for (const auto& row : visits["rows"]) {
          if (!row.is_number_integer()) {
            fail(where + ": visits.rows must be museum ids");
            break;
          }
          declared.push_back(row.get<int>());
        }
        std::vector<int> expected;
        try {
          expected = pass_rows(Problem{p.museums, p.consortia, {}}, id);
        } catch (const std::exception&) {
          expected.clear();
        }
        std::vector<int> sorted = declared;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != expected) {
          fail(where + ": visits.rows must list exactly the museums covered by the pass");
        } else if (!visits["matrix"].is_array() ||
                   visits["matrix"].size() != declared.size()) {
          fail(where + ": visits.matrix must have one row per declared museum");
        } else {
          // accept any declared row order; store rows in canonical order
          pass.visits.assign(declared.size(), {});
          bool ok = true;
          for (std::size_t r = 0; ok && r < declared.size(); ++r) {
            std::size_t canonical =
                std::lower_bound(expected.begin(), expected.end(), declared[r]) - expected.begin();
            const json& row = visits["matrix"][r];
            if (!row.is_array() || row.size() != pass.holders.size()) {
              fail(where + ": visits.matrix rows must have one entry per holder");
              ok = false;
              break;
            }
            for (const auto& cell : row) {
              if (!cell.is_number_integer() ||
                  (cell.get<int>() != 0 && cell.get<int>() != 1)) {
                fail(where + ": visits.matrix entries must be 0 or 1");
                ok = false;
                break;
              }
              pass.visits[canonical].push_back(static_cast<std::uint8_t>(cell.get<int>()));
            }
          }
          if (!ok) pass.visits.clear();
        }
      }
    }

    p.passes[id] = std::move(pass);
  }
  if (!diags.empty()) return {std::nullopt, diags};

  if (options.normalize_singletons) {
    for (int t = 1; t <= s; ++t) {
      if (p.consortia[t - 1].size() != 1) continue;
      int i = p.consortia[t - 1][0];
      Pass& individual = p.passes[PassId::individual(i)];
      Pass& consortium = p.passes[PassId::consortium(t)];
      individual.price = consortium.price;
      if (individual.sold()) {
        if (!consortium.sold()) consortium.visits = {{}};
        for (const auto& holder : individual.holders) {
          consortium.holders.push_back(holder);
          consortium.visits[0].push_back(1);
        }
        individual.holders.clear();
        individual.visits.clear();
      }
    }
  }

  ValidationReport report = validate(p);
  if (!report.ok()) {
    for (const auto& v : report.violations) diags.push_back(v.code + ": " + v.detail);
    return {std::nullopt, diags};
  }
  return {std::move(p), {}};
}

inline Problem problem_from_json(const json& root, const ParseOptions& options = {}) {
  auto [problem, diags] = try_problem_from_json(root, options);
  if (!problem) throw ParseError(std::move(diags));
  return std::move(*problem);
}

inline Problem parse_problem(const std::string& text, const ParseOptions& options = {}) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ParseError({"file is not well-formed JSON"});
  return problem_from_json(root, options);
}

inline Problem load_problem(const std::string& path, const ParseOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError({"cannot open " + path});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str(), options);
}

inline void save_problem(const Problem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_problem(p);
}

}  // namespace passalloc

#endif  // PASSALLOC_IO_HPP
