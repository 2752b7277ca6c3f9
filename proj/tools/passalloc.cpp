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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "passalloc/axioms.hpp"
#include "passalloc/games.hpp"
#include "passalloc/io.hpp"
#include "passalloc/problem.hpp"
#include "passalloc/randgen.hpp"
#include "passalloc/rules.hpp"
#include "passalloc/transforms.hpp"

namespace {

using namespace passalloc;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

json meta_block(const char* kind) {
  return json{{"tool", "passalloc"}, {"version", "0.1.0"}, {"kind", kind}};
}

Rule parse_rule_or_throw(const std::string& tag) {
  auto rule = rule_from_string(tag);
  if (!rule)
    throw CLI::ValidationError("--rule", "unknown rule tag '" + tag +
                                             "' (expected ee, pp, pe, ep or r1..r10)");
  return *rule;
}

std::vector<Rat> parse_price_list(const std::string& text) {
  std::vector<Rat> prices;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto price = parse_rational(item);
    if (!price) throw std::invalid_argument("bad price literal '" + item + "'");
    prices.push_back(*price);
  }
  if (prices.empty()) throw std::invalid_argument("empty price list");
  return prices;
}

void parse_range(const std::string& text, int& lo, int& hi) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    lo = hi = std::stoi(text);
    return;
  }
  lo = std::stoi(text.substr(0, colon));
  hi = std::stoi(text.substr(colon + 1));
}

std::string payout_cell(const Rat& value) {
  return to_fraction_string(value) + " (" + to_decimal_string(value) + ")";
}

void print_allocation_table(std::ostream& out, Rule rule, const Problem& p,
                            const Allocation& a) {
  out << "rule: " << to_string(rule) << "\n";
  out << "museum  payout\n";
  Rat total(0);
  for (int i = 1; i <= p.museums; ++i) {
    out << "  " << i << "  " << payout_cell(a[i - 1]) << "\n";
    total += a[i - 1];
  }
  out << "total  " << payout_cell(total) << "\n";
}

json allocation_to_json(const Allocation& a) {
  json payouts = json::array();
  for (const Rat& x : a) payouts.push_back(to_fraction_string(x));
  return payouts;
}

struct GenFlags {
  std::string museums = "2:6";
  std::string consortia = "1:3";
  std::string general_holders = "0:4";
  std::string consortium_holders = "0:3";
  std::string individual_holders = "0:2";
  int price_num_max = 12;
  int price_den_max = 4;
  std::string density = "3/5";
  int max_holders = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--museums", museums, "museum count range MIN:MAX");
    cmd->add_option("--consortia", consortia, "consortium count range MIN:MAX");
    cmd->add_option("--general-holders", general_holders, "general pass holder range MIN:MAX");
    cmd->add_option("--consortium-holders", consortium_holders,
                    "per-consortium holder range MIN:MAX");
    cmd->add_option("--individual-holders", individual_holders,
                    "per-museum individual holder range MIN:MAX");
    cmd->add_option("--price-num-max", price_num_max, "largest price numerator");
    cmd->add_option("--price-den-max", price_den_max, "largest price denominator");
    cmd->add_option("--density", density, "visit probability as a fraction, e.g. 3/5");
    cmd->add_option("--max-holders", max_holders, "cap on total holders (0 = none)");
  }

  GenConfig to_config(std::uint64_t seed) const {
    GenConfig cfg;
    parse_range(museums, cfg.museums_min, cfg.museums_max);
    parse_range(consortia, cfg.consortia_min, cfg.consortia_max);
    parse_range(general_holders, cfg.general_holders_min, cfg.general_holders_max);
    parse_range(consortium_holders, cfg.consortium_holders_min, cfg.consortium_holders_max);
    parse_range(individual_holders, cfg.individual_holders_min, cfg.individual_holders_max);
    cfg.price_numerator_max = price_num_max;
    cfg.price_denominator_max = price_den_max;
    auto slash = density.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("--density expects NUM/DEN");
    cfg.density_num = static_cast<std::uint32_t>(std::stoul(density.substr(0, slash)));
    cfg.density_den = static_cast<std::uint32_t>(std::stoul(density.substr(slash + 1)));
    cfg.max_total_holders = max_holders;
    cfg.seed = seed;
    return cfg;
  }
};

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

// --- validate ---------------------------------------------------------------

int run_validate(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json root = json::parse(buffer.str(), nullptr, false);
  if (root.is_discarded()) {
    std::cerr << "error: " << path << " is not well-formed JSON\n";
    return kExitUsage;
  }
  ParseOptions options;
  options.normalize_singletons = normalize;
  auto [problem, diags] = try_problem_from_json(root, options);
  if (!problem) {
    for (const auto& d : diags) std::cout << "violation: " << d << "\n";
    return kExitCheckFailed;
  }
  std::cout << "ok: " << problem->museums << " museums, " << consortium_count(*problem)
            << " consortia, revenue " << to_fraction_string(revenue(*problem)) << "\n";
  return kExitOk;
}

// --- allocate ---------------------------------------------------------------

int run_allocate(const std::string& rule_tag, const std::string& path, const std::string& format) {
  Rule rule = parse_rule_or_throw(rule_tag);
  Problem p = load_problem(path);
  Allocation a = allocate(rule, p);
  if (format == "json") {
    json out;
    out["meta"] = meta_block("allocation");
    out["rule"] = std::string(to_string(rule));
    out["payouts"] = allocation_to_json(a);
    out["total"] = to_fraction_string(revenue(p));
    std::cout << out.dump(2) << "\n";
  } else {
    print_allocation_table(std::cout, rule, p, a);
  }
  return kExitOk;
}

// --- audit ------------------------------------------------------------------

std::set<Axiom> parse_axiom_list(const std::string& text, Rule rule) {
  if (text == "all") return characteristic_axioms(rule);
  std::set<Axiom> axioms;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto axiom = axiom_from_string(item);
    if (!axiom)
      throw CLI::ValidationError("--axioms", "unknown axiom tag '" + item + "'");
    axioms.insert(*axiom);
  }
  if (axioms.empty()) throw CLI::ValidationError("--axioms", "empty axiom list");
  return axioms;
}

int run_audit(const std::string& rule_tag, const std::string& axioms_text, int instances,
              std::uint64_t seed, const GenFlags& gen, const std::string& format,
              const std::string& out_path) {
  Rule rule = parse_rule_or_throw(rule_tag);
  std::set<Axiom> axioms = parse_axiom_list(axioms_text, rule);
  AuditConfig config;
  config.instances = instances;
  config.seed = seed;
  config.gen = gen.to_config(seed);
  AuditReport report = audit(rule, config, axioms);

  json report_json = report.to_json();
  report_json["meta"]["version"] = "0.1.0";
  if (!out_path.empty()) write_or_print(report_json.dump(2) + "\n", out_path);

  if (format == "json") {
    std::cout << report_json.dump(2) << "\n";
  } else {
    std::cout << "audit of rule " << to_string(rule) << " over " << instances
              << " instances (seed " << seed << ")\n";
    std::cout << "axiom                  checked  passed  failed  n/a\n";
    for (const auto& [axiom, st] : report.stats) {
      std::string name(to_string(axiom));
      name.resize(22, ' ');
      std::cout << name << " " << st.checked << "  " << st.passed << "  " << st.failed << "  "
                << st.not_applicable << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "FAILURES found") << "\n";
  }
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

// --- independence -----------------------------------------------------------

int run_independence(int theorem, std::uint64_t seed, int budget, int sample,
                     const GenFlags& gen, const std::string& format,
                     const std::string& out_dir) {
  SearchConfig config;
  config.budget = budget;
  config.satisfaction_sample = sample;
  config.seed = seed;
  config.gen = gen.to_config(seed);
  IndependenceReport report = independence_witnesses(theorem, config);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& entry : report.entries) {
      if (!entry.witness) continue;
      std::string name = "thm" + std::to_string(theorem) + "_" +
                         std::string(to_string(entry.rule)) + "_" +
                         std::string(to_string(entry.axiom)) + ".json";
      std::ofstream out(std::filesystem::path(out_dir) / name);
      out << entry.witness->to_json().dump(2) << "\n";
    }
  }

  if (format == "json") {
    json out = report.to_json();
    out["meta"]["version"] = "0.1.0";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "independence witnesses for theorem " << theorem << " (seed " << seed
              << ", budget " << budget << ")\n";
    for (const auto& entry : report.entries) {
      std::cout << "  " << to_string(entry.rule) << " violates " << to_string(entry.axiom)
                << ": "
                << (entry.witness ? "witness found after " + std::to_string(entry.instances_tried) +
                                        " instances"
                                  : "SEARCH EXHAUSTED after " +
                                        std::to_string(entry.instances_tried) + " instances")
                << "\n";
      for (const auto& [axiom, ok] : entry.others_satisfied)
        if (!ok)
          std::cout << "    discrepancy: sampled violation of " << to_string(axiom)
                    << " (expected satisfied)\n";
    }
    std::cout << (report.complete() ? "complete" : "INCOMPLETE") << "\n";
  }
  return report.complete() ? kExitOk : kExitCheckFailed;
}

// --- owen -------------------------------------------------------------------

int run_owen(const std::string& path, const std::string& format) {
  Problem p = load_problem(path);
  CharacteristicFunction v = build_game(p);
  std::vector<Rat> shapley = shapley_value(v);
  std::vector<Rat> owen = owen_value(v, p.consortia);
  Allocation ee = allocate(Rule::EE, p);
  const bool equal = owen == ee;

  if (format == "json") {
    json out;
    out["meta"] = meta_block("owen");
    json game = json::array();
    for (std::uint32_t mask = 0; mask <= v.full_mask(); ++mask) {
      json coalition = json::array();
      for (int i = 1; i <= v.players; ++i)
        if (mask & (std::uint32_t(1) << (i - 1))) coalition.push_back(i);
      game.push_back(json{{"coalition", std::move(coalition)},
                          {"value", to_fraction_string(v.value(mask))}});
    }
    out["game"] = std::move(game);
    out["shapley"] = allocation_to_json(shapley);
    out["owen"] = allocation_to_json(owen);
    out["ee"] = allocation_to_json(ee);
    out["verdict"] = equal ? "EQUAL" : "UNEQUAL";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "game table (coalition -> value)\n";
    for (std::uint32_t mask = 0; mask <= v.full_mask(); ++mask) {
      std::cout << "  {";
      bool first = true;
      for (int i = 1; i <= v.players; ++i)
        if (mask & (std::uint32_t(1) << (i - 1))) {
          std::cout << (first ? "" : ",") << i;
          first = false;
        }
      std::cout << "} = " << to_fraction_string(v.value(mask)) << "\n";
    }
    auto show = [&](const char* tag, const std::vector<Rat>& values) {
      std::cout << tag << ":";
      for (const Rat& x : values) std::cout << " " << payout_cell(x);
      std::cout << "\n";
    };
    show("shapley", shapley);
    show("owen", owen);
    show("ee", ee);
    std::cout << "verdict: " << (equal ? "EQUAL" : "UNEQUAL") << "\n";
  }
  return equal ? kExitOk : kExitCheckFailed;
}

// --- gen --------------------------------------------------------------------

int run_gen(std::uint64_t seed, const GenFlags& gen, const std::string& out_path) {
  Problem p = generate(gen.to_config(seed));
  write_or_print(serialize_problem(p), out_path);
  return kExitOk;
}

// --- transform --------------------------------------------------------------

int run_transform(const std::string& path, int split_museum_target,
                  const std::string& prices_text, int split_consortium_target,
                  const std::string& pass_prices_text, const std::string& museum_prices_text,
                  bool reduce, const std::string& out_path) {
  Problem p = load_problem(path);
  Problem result;
  if (split_museum_target > 0) {
    MuseumSplitSpec spec;
    spec.target = split_museum_target;
    spec.piece_prices = parse_price_list(prices_text);
    result = split_museum(p, spec).problem;
  } else if (split_consortium_target > 0) {
    ConsortiumSplitSpec spec;
    spec.target = split_consortium_target;
    spec.copy_pass_prices = parse_price_list(pass_prices_text);
    const std::vector<int>& block = p.consortia.at(spec.target - 1);
    const Rat total = price_of(p, PassId::consortium(spec.target));
    if (museum_prices_text.empty()) {
      // default: split each museum price in proportion to the copy shares
      spec.copy_museum_prices.assign(spec.copy_pass_prices.size(), {});
      for (int museum : block) {
        Rat price = price_of(p, PassId::individual(museum));
        for (std::size_t l = 0; l < spec.copy_pass_prices.size(); ++l)
          spec.copy_museum_prices[l].push_back(price * spec.copy_pass_prices[l] / total);
      }
    } else {
      // "MUSEUM:P1,P2,...;MUSEUM:..." with one entry per museum of the block
      std::map<int, std::vector<Rat>> by_museum;
      std::stringstream in(museum_prices_text);
      std::string part;
      while (std::getline(in, part, ';')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--museum-prices expects MUSEUM:P1,P2;...");
        by_museum[std::stoi(part.substr(0, colon))] = parse_price_list(part.substr(colon + 1));
      }
      spec.copy_museum_prices.assign(spec.copy_pass_prices.size(), {});
      for (int museum : block) {
        auto it = by_museum.find(museum);
        if (it == by_museum.end() || it->second.size() != spec.copy_pass_prices.size())
          throw std::invalid_argument("--museum-prices must list every museum of the block, "
                                      "one price per copy");
        for (std::size_t l = 0; l < spec.copy_pass_prices.size(); ++l)
          spec.copy_museum_prices[l].push_back(it->second[l]);
      }
    }
    result = split_consortium(p, spec).problem;
  } else if (reduce) {
    result = reduce_problem(p);
  } else {
    throw CLI::ValidationError("transform",
                               "choose one of --split-museum, --split-consortium, --reduce");
  }
  write_or_print(serialize_problem(result), out_path);
  return kExitOk;
}

// --- replay -----------------------------------------------------------------

int run_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kExitUsage;
  }
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) {
    std::cerr << "error: " << path << " is not well-formed JSON\n";
    return kExitUsage;
  }
  Witness w = Witness::from_json(root);
  CheckResult result = replay(w);
  std::cout << "rule " << to_string(w.rule) << ", axiom " << to_string(w.axiom) << ": ";
  switch (result.status) {
    case CheckResult::Status::Failed:
      std::cout << "FAILED (reproduced)\n";
      if (result.witness)
        std::cout << "  " << result.witness->lhs << " != " << result.witness->rhs << "\n";
      return kExitCheckFailed;
    case CheckResult::Status::Passed:
      std::cout << "passed (not reproduced)\n";
      return kExitOk;
    case CheckResult::Status::NotApplicable:
      std::cout << "not applicable: " << result.note << "\n";
      return kExitOk;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"museum pass revenue allocation: rules, axioms, audits"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check a problem file");
  std::string validate_file;
  bool validate_normalize = false;
  validate_cmd->add_option("file", validate_file, "problem file")->required();
  validate_cmd->add_flag("--normalize", validate_normalize,
                         "repair singleton-consortium passes instead of rejecting");

  // allocate
  auto* allocate_cmd = app.add_subcommand("allocate", "evaluate a rule on a problem");
  std::string allocate_rule, allocate_file, allocate_format = "table";
  allocate_cmd->add_option("--rule", allocate_rule, "rule tag (ee, pp, pe, ep, r1..r10)")
      ->required();
  allocate_cmd->add_option("file", allocate_file, "problem file")->required();
  allocate_cmd->add_option("--format", allocate_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "randomized axiom audit of a rule");
  std::string audit_rule, audit_axioms = "all", audit_format = "table", audit_out;
  int audit_instances = 200;
  std::uint64_t audit_seed = 0;
  GenFlags audit_gen;
  audit_cmd->add_option("--rule", audit_rule, "rule tag")->required();
  audit_cmd->add_option("--axioms", audit_axioms,
                        "comma-separated axiom tags, or 'all' for the rule's theorem set");
  audit_cmd->add_option("--instances", audit_instances, "generated instances");
  audit_cmd->add_option("--seed", audit_seed, "random seed")->envname("PASSALLOC_SEED");
  audit_cmd->add_option("--format", audit_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  audit_cmd->add_option("-o,--out", audit_out, "write the JSON report to a file");
  audit_gen.attach(audit_cmd);

  // independence
  auto* indep_cmd = app.add_subcommand("independence",
                                       "search violation witnesses for a theorem's axioms");
  int indep_theorem = 2, indep_budget = 500, indep_sample = 25;
  std::uint64_t indep_seed = 0;
  std::string indep_format = "table", indep_out;
  GenFlags indep_gen;
  indep_cmd->add_option("--theorem", indep_theorem, "theorem number (2, 3, 4 or 5)")
      ->required()
      ->check(CLI::IsMember({2, 3, 4, 5}));
  indep_cmd->add_option("--seed", indep_seed, "random seed")->envname("PASSALLOC_SEED");
  indep_cmd->add_option("--budget", indep_budget, "instances searched per pair");
  indep_cmd->add_option("--sample", indep_sample, "instances for the satisfaction spot-check");
  indep_cmd->add_option("--format", indep_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  indep_cmd->add_option("--out", indep_out, "directory for replayable witness files");
  indep_gen.attach(indep_cmd);

  // owen
  auto* owen_cmd = app.add_subcommand("owen", "game table, Owen value and the ee comparison");
  std::string owen_file, owen_format = "table";
  owen_cmd->add_option("file", owen_file, "problem file")->required();
  owen_cmd->add_option("--format", owen_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random valid problem");
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  GenFlags gen_flags;
  gen_cmd->add_option("--seed", gen_seed, "random seed")->envname("PASSALLOC_SEED");
  gen_cmd->add_option("-o,--out", gen_out, "output file (stdout when omitted)");
  gen_flags.attach(gen_cmd);

  // transform
  auto* transform_cmd = app.add_subcommand("transform", "split a museum or consortium, or reduce");
  std::string transform_file, transform_prices, transform_pass_prices, transform_museum_prices,
      transform_out;
  int transform_split_museum = 0, transform_split_consortium = 0;
  bool transform_reduce = false;
  transform_cmd->add_option("file", transform_file, "problem file")->required();
  transform_cmd->add_option("--split-museum", transform_split_museum, "museum id to split");
  transform_cmd->add_option("--prices", transform_prices,
                            "piece prices A,B,... summing to the museum's price");
  transform_cmd->add_option("--split-consortium", transform_split_consortium,
                            "consortium index to split");
  transform_cmd->add_option("--pass-prices", transform_pass_prices,
                            "copy pass prices A,B,... summing to the consortium price");
  transform_cmd->add_option("--museum-prices", transform_museum_prices,
                            "per-museum piece prices MUSEUM:P1,P2;MUSEUM:... (default "
                            "proportional to the copy shares)");
  transform_cmd->add_flag("--reduce", transform_reduce,
                          "reduce a general-pass-only problem to one museum per consortium");
  transform_cmd->add_option("-o,--out", transform_out, "output file (stdout when omitted)");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run the check a witness file came from");
  std::string replay_file;
  replay_cmd->add_option("file", replay_file, "witness file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) return run_validate(validate_file, validate_normalize);
    if (*allocate_cmd) return run_allocate(allocate_rule, allocate_file, allocate_format);
    if (*audit_cmd)
      return run_audit(audit_rule, audit_axioms, audit_instances, audit_seed, audit_gen,
                       audit_format, audit_out);
    if (*indep_cmd)
      return run_independence(indep_theorem, indep_seed, indep_budget, indep_sample, indep_gen,
                              indep_format, indep_out);
    if (*owen_cmd) return run_owen(owen_file, owen_format);
    if (*gen_cmd) return run_gen(gen_seed, gen_flags, gen_out);
    if (*transform_cmd)
      return run_transform(transform_file, transform_split_museum, transform_prices,
                           transform_split_consortium, transform_pass_prices,
                           transform_museum_prices, transform_reduce, transform_out);
    if (*replay_cmd) return run_replay(replay_file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
