#pragma once

// Command line surface. Exit codes: 0 success / provable, 1 not provable,
// 2 input error, 3 internal violation (check or audit failure).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "explog/formula.hpp"
#include "explog/g4ip.hpp"
#include "explog/hs.hpp"
#include "explog/interp.hpp"
#include "explog/json_io.hpp"
#include "explog/latex.hpp"
#include "explog/normalize.hpp"
#include "explog/parser.hpp"
#include "explog/printer.hpp"

namespace explog {

namespace cli_detail {

inline std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Formula input_formula(const std::string& arg, std::istream& in) {
  if (arg == "-") return parse_formula(slurp("-", in));
  return parse_formula(arg);
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::istream& in = std::cin,
                   std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"exp-log normal forms, the G4ip and HS calculi, and the arithmetic "
               "interpretation of proof rules"};
  app.require_subcommand(1);

  std::string formula_arg = "-";
  std::string input_path = "-";
  std::string emit = "text";
  std::string notation = "both";
  std::string calculus = "g4ip";
  std::string logic = "minimal";
  std::string to = "hs";
  unsigned long valuation = 2;
  unsigned long seed = 0;
  unsigned long gamma_max = 8;
  std::vector<unsigned long> grid_values = {2, 3, 4};
  unsigned long random_points = 0;
  bool verbose_units = false;
  bool sweep = false;

  auto add_common = [&](CLI::App* cmd, bool with_formula) {
    if (with_formula)
      cmd->add_option("formula", formula_arg, "formula text, or - for stdin")->required();
    cmd->add_option("--emit", emit, "output form: text|json|latex")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    cmd->add_option("--valuation", valuation, "default atom value (>= 2)");
    cmd->add_option("--seed", seed, "seed for randomized sweeps");
  };

  auto* cmd_norm = app.add_subcommand("normalize", "compute the exp-log normal form");
  add_common(cmd_norm, true);
  cmd_norm->add_option("--notation", notation, "logical|poly|both")
      ->check(CLI::IsMember({"logical", "poly", "both"}));
  cmd_norm->add_flag("--verbose-units", verbose_units, "show trivial ^1 and unit factors");

  auto* cmd_classify = app.add_subcommand("classify", "sigma/pi/base class report");
  add_common(cmd_classify, true);

  auto* cmd_prove = app.add_subcommand("prove", "decide provability and emit a derivation");
  add_common(cmd_prove, true);
  cmd_prove->add_option("--calculus", calculus, "g4ip|hs")->check(CLI::IsMember({"g4ip", "hs"}));
  cmd_prove->add_option("--logic", logic, "minimal|ex-falso")
      ->check(CLI::IsMember({"minimal", "ex-falso"}));
  cmd_prove->add_flag("--verbose-units", verbose_units, "show trivial units in HS output");

  auto* cmd_translate = app.add_subcommand("translate", "map a derivation between calculi");
  add_common(cmd_translate, false);
  cmd_translate->add_option("--to", to, "hs|g4ip")->check(CLI::IsMember({"hs", "g4ip"}))
      ->required();
  cmd_translate->add_option("--input", input_path, "derivation JSON file, or - for stdin");
  cmd_translate->add_option("--logic", logic, "minimal|ex-falso")
      ->check(CLI::IsMember({"minimal", "ex-falso"}));

  auto* cmd_check = app.add_subcommand("check", "validate a derivation file");
  add_common(cmd_check, false);
  cmd_check->add_option("--calculus", calculus, "g4ip|hs")->check(CLI::IsMember({"g4ip", "hs"}));
  cmd_check->add_option("--input", input_path, "derivation JSON file, or - for stdin");
  cmd_check->add_option("--logic", logic, "minimal|ex-falso")
      ->check(CLI::IsMember({"minimal", "ex-falso"}));

  auto* cmd_measure = app.add_subcommand("measure", "audit derivations or sweep rule grids");
  add_common(cmd_measure, false);
  cmd_measure->add_option("--input", input_path, "G4ip derivation JSON file, or - for stdin");
  cmd_measure->add_flag("--sweep", sweep, "sweep the rule schema grids instead");
  cmd_measure->add_option("--values", grid_values, "atom values for the sweep");
  cmd_measure->add_option("--gamma-max", gamma_max, "largest context value");
  cmd_measure->add_option("--random", random_points,
                          "audit this many random grid points per rule instead of all");

  auto* cmd_lemmas = app.add_subcommand("lemmas", "verify the inequality lemmas and the "
                                                  "G3ip counterexample");
  add_common(cmd_lemmas, false);

  try {
    std::vector<const char*> argv;
    argv.push_back("explog");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  ProverConfig pcfg;
  pcfg.ex_falso = (logic == "ex-falso");
  Valuation val(valuation < 2 ? 2 : valuation);
  EvalOptions eopt;

  try {
    if (*cmd_norm) {
      Formula f = cli_detail::input_formula(formula_arg, in);
      NF e = enf(f);
      if (emit == "json") {
        json j{{"input", to_json(f)},
               {"normal_form", to_json(e)},
               {"logical", print_logical(simplify_top(embed(e)))},
               {"polynomial", print_polynomial(e, verbose_units)}};
        out << j.dump(2) << "\n";
      } else if (emit == "latex") {
        out << print_polynomial(e, verbose_units) << "\n";
      } else {
        if (notation == "poly" || notation == "both")
          out << print_polynomial(e, verbose_units) << "\n";
        if (notation == "logical" || notation == "both")
          out << print_logical(simplify_top(embed(e))) << "\n";
      }
      return 0;
    }

    if (*cmd_classify) {
      Formula f = cli_detail::input_formula(formula_arg, in);
      NF e = enf(f);
      ClassReport r = classify(e);
      if (emit == "json") {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << "top class: " << (r.top_is_sigma ? "Sigma" : "Pi") << "\n";
        out << "components: " << r.tree.width << "\n";
        out << "alternation depths:";
        for (int d : r.depth_vector) out << " " << d;
        out << "\n" << print_polynomial(e) << "\n";
      }
      return 0;
    }

    if (*cmd_prove) {
      Formula f = cli_detail::input_formula(formula_arg, in);
      if (calculus == "hs") {
        auto proof = prove_hs(f);
        if (!proof) {
          err << "not provable\n";
          return 1;
        }
        if (emit == "json") out << to_json(*proof).dump(2) << "\n";
        else if (emit == "latex") out << to_latex(*proof, verbose_units) << "\n";
        else {
          out << "provable; HS proof with " << proof->node_count() << " nodes\n";
          out << print_polynomial(NF(proof->conclusion), verbose_units) << "\n";
        }
        return 0;
      }
      auto d = prove(f, pcfg);
      if (!d) {
        err << "not provable\n";
        return 1;
      }
      if (emit == "json") out << to_json(*d).dump(2) << "\n";
      else if (emit == "latex") out << to_latex(*d) << "\n";
      else out << "provable; G4ip derivation with " << d->node_count() << " nodes\n";
      return 0;
    }

    if (*cmd_translate) {
      json j = json::parse(cli_detail::slurp(input_path, in));
      if (to == "hs") {
        Derivation d = derivation_from_json(j);
        HsProof p = g4ip_to_hs(d, pcfg);
        if (emit == "latex") out << to_latex(p) << "\n";
        else out << to_json(p).dump(2) << "\n";
      } else {
        HsProof p = hs_proof_from_json(j);
        Derivation d = hs_to_g4ip(p, pcfg);
        if (emit == "latex") out << to_latex(d) << "\n";
        else out << to_json(d).dump(2) << "\n";
      }
      return 0;
    }

    if (*cmd_check) {
      json j = json::parse(cli_detail::slurp(input_path, in));
      if (calculus == "hs") {
        HsProof p = hs_proof_from_json(j);
        auto res = check_hs(p);
        if (!res) {
          err << "invalid: " << res.message << "\n";
          return 3;
        }
        out << "valid HS proof (" << p.node_count() << " nodes)\n";
        return 0;
      }
      Derivation d = derivation_from_json(j);
      auto res = check(d, pcfg);
      if (!res) {
        err << "invalid: " << res.message << " at path";
        for (size_t i : res.path) err << " " << i;
        err << "\n";
        return 3;
      }
      out << "valid G4ip derivation (" << d.node_count() << " nodes)\n";
      return 0;
    }

    if (*cmd_measure) {
      if (sweep) {
        bool all_ok = true;
        json rules = json::array();
        for (RuleTag t : {RuleTag::Axiom, RuleTag::OrR1, RuleTag::OrR2, RuleTag::ImpLAtom,
                          RuleTag::ImpLImp, RuleTag::ImpR, RuleTag::AndR, RuleTag::OrL,
                          RuleTag::AndL, RuleTag::ImpLAnd, RuleTag::ImpLOr}) {
          std::vector<unsigned long> values = grid_values;
          if (random_points > 0) {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<size_t> pick(0, grid_values.size() - 1);
            values.clear();
            for (unsigned long i = 0; i < random_points; ++i)
              values.push_back(grid_values[pick(rng)]);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
          }
          GridSummary s = audit_rule_grid(t, values, gamma_max, eopt);
          all_ok = all_ok && s.ok();
          if (emit == "json") rules.push_back(to_json(s));
          else
            out << s.rule << ": checked " << s.checked << ", equal " << s.equal
                << ", strictly-less " << s.strictly_less << ", violations "
                << s.violations.size() << "\n";
        }
        if (emit == "json") out << rules.dump(2) << "\n";
        return all_ok ? 0 : 3;
      }
      json j = json::parse(cli_detail::slurp(input_path, in));
      Derivation d = derivation_from_json(j);
      std::vector<AuditReport> reports;
      audit_derivation(d, val, reports, eopt);
      bool all_ok = true;
      json arr = json::array();
      for (const auto& r : reports) {
        all_ok = all_ok && r.ok();
        if (emit == "json") arr.push_back(to_json(r));
        else
          out << r.rule << ": " << r.premise_product.str() << " vs "
              << r.conclusion_value.str() << " -> " << to_string(r.verdict) << "\n";
      }
      if (emit == "json") out << arr.dump(2) << "\n";
      return all_ok ? 0 : 3;
    }

    if (*cmd_lemmas) {
      LemmaReport lem = check_inequality_lemmas();
      LemmaReport rule = check_rule_inequality();
      G3ipCounterexample g3 = check_g3ip_failure();
      bool ok = lem.ok() && rule.ok() && !g3.inequality_holds;
      if (emit == "json") {
        json j{{"inequality_lemmas", to_json(lem)},
               {"rule_inequality", to_json(rule)},
               {"g3ip_counterexample", to_json(g3)}};
        out << j.dump(2) << "\n";
      } else {
        out << "inequality lemmas: " << lem.checked << " checked, " << lem.violations.size()
            << " violations, " << lem.skipped_overflow.size() << " skipped\n";
        out << "rule inequality: " << rule.checked << " checked, " << rule.violations.size()
            << " violations\n";
        out << "g3ip counterexample at a=c=" << g3.a << ", b=" << g3.b << ", gamma=" << g3.gamma
            << ": conclusion " << g3.conclusion_value.str() << " vs premises "
            << g3.premise_product.str() << " -> inequality "
            << (g3.inequality_holds ? "holds (unexpected)" : "fails as predicted") << "\n";
      }
      return ok ? 0 : 3;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "json error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace explog
