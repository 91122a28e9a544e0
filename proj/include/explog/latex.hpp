#pragma once

// LaTeX proof-tree emitters (proof.sty \infer style). G4ip sequents are
// rendered in polynomial notation, HS conclusions likewise.

#include <string>

#include "explog/formula.hpp"
#include "explog/g4ip.hpp"
#include "explog/hs.hpp"
#include "explog/normal_form.hpp"
#include "explog/printer.hpp"

namespace explog {

inline const char* latex_rule(RuleTag t) {
  switch (t) {
    case RuleTag::Axiom: return "\\text{axiom}";
    case RuleTag::OrR1: return "(\\vee_r^1)";
    case RuleTag::OrR2: return "(\\vee_r^2)";
    case RuleTag::ImpLAtom: return "(\\to_l^P)";
    case RuleTag::ImpLImp: return "(\\to_l^\\to)";
    case RuleTag::ImpR: return "(\\to_r)";
    case RuleTag::AndR: return "(\\wedge_r)";
    case RuleTag::OrL: return "(\\vee_l)";
    case RuleTag::AndL: return "(\\wedge_l)";
    case RuleTag::ImpLAnd: return "(\\to_l^\\wedge)";
    case RuleTag::ImpLOr: return "(\\to_l^\\vee)";
    case RuleTag::FalsumL: return "(\\bot_l)";
  }
  return "?";
}

inline const char* latex_rule(HsRule t) {
  switch (t) {
    case HsRule::Axiom: return "\\text{axiom}";
    case HsRule::OrR1: return "(\\vee_r^1)";
    case HsRule::OrR2: return "(\\vee_r^2)";
    case HsRule::ImpLAtomP: return "(\\to_l^{P}{}')";
    case HsRule::ImpLImpP: return "(\\to_l^{\\to}{}')";
  }
  return "?";
}

inline std::string latex_sequent(const Sequent& s) {
  return print_polynomial(sequent_formula(s));
}

inline std::string to_latex(const Derivation& d) {
  std::string out = "\\infer[" + std::string(latex_rule(d.rule)) + "]{" +
                    latex_sequent(d.conclusion) + "}{";
  for (size_t i = 0; i < d.premises.size(); ++i) {
    if (i) out += " & ";
    out += to_latex(d.premises[i]);
  }
  out += "}";
  return out;
}

inline std::string to_latex(const HsDerivation& t, bool verbose_units = false) {
  std::string out = "\\infer[" + std::string(latex_rule(t.rule)) + "]{" +
                    print_polynomial(t.conclusion, verbose_units) + "}{";
  for (size_t i = 0; i < t.premises.size(); ++i) {
    if (i) out += " & ";
    out += to_latex(t.premises[i], verbose_units);
  }
  out += "}";
  return out;
}

inline std::string to_latex(const HsProof& p, bool verbose_units = false) {
  if (p.trees.size() == 1) return to_latex(p.trees[0], verbose_units);
  std::string out;
  for (size_t i = 0; i < p.trees.size(); ++i) {
    if (i) out += "\n\\qquad\n";
    out += to_latex(p.trees[i], verbose_units);
  }
  return out;
}

}  // namespace explog
