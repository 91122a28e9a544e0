#pragma once

// The arithmetic interpretation of propositional formulas as exponential
// polynomial values: atoms >= 2, top and the empty context are 1,
// conjunction/context are products, disjunction is sum, G -> F is F^G, and
// a sequent is goal^context. Invertible G4ip rules preserve the value;
// non-invertible rules strictly decrease it.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "explog/bignat.hpp"
#include "explog/formula.hpp"
#include "explog/normal_form.hpp"

namespace explog {

// Atom-to-integer assignment; every atom maps to a value >= 2.
class Valuation {
 public:
  explicit Valuation(unsigned long default_value = 2) : default_(default_value) {
    if (default_value < 2) throw std::invalid_argument("atom values must be >= 2");
  }

  Valuation& set(const std::string& atom, unsigned long v) {
    if (v < 2) throw std::invalid_argument("atom values must be >= 2");
    map_[atom] = v;
    return *this;
  }

  unsigned long operator()(const std::string& atom) const {
    auto it = map_.find(atom);
    return it == map_.end() ? default_ : it->second;
  }

  unsigned long default_value() const { return default_; }

 private:
  unsigned long default_;
  std::map<std::string, unsigned long> map_;
};

struct EvalOptions {
  unsigned long max_digits = BigNat::kDefaultMaxDigits;
};

// --- evaluation -------------------------------------------------------------

inline BigNat eval_formula(const Formula& f, const Valuation& v, const EvalOptions& opt = {}) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return BigNat(v(f.name()));
    case Formula::Kind::Top: return BigNat(1);
    case Formula::Kind::And: return eval_formula(f.lhs(), v, opt) * eval_formula(f.rhs(), v, opt);
    case Formula::Kind::Or: return eval_formula(f.lhs(), v, opt) + eval_formula(f.rhs(), v, opt);
    case Formula::Kind::Imp:
      return pow(eval_formula(f.rhs(), v, opt), eval_formula(f.lhs(), v, opt), opt.max_digits);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      throw std::invalid_argument("eval_formula: quantified formula");
  }
  return BigNat(1);
}

inline BigNat eval_context(const std::vector<Formula>& ctx, const Valuation& v,
                           const EvalOptions& opt = {}) {
  BigNat out(1);
  for (const auto& f : ctx) out = out * eval_formula(f, v, opt);
  return out;
}

// goal ^ context
inline BigNat eval_sequent(const Sequent& s, const Valuation& v, const EvalOptions& opt = {}) {
  return pow(eval_formula(s.goal, v, opt), eval_context(s.context, v, opt), opt.max_digits);
}

inline BigNat eval_nf(const Conj& c, const Valuation& v, const EvalOptions& opt = {});

inline BigNat eval_nf(const Base& b, const Valuation& v, const EvalOptions& opt) {
  if (b.is_prime()) return BigNat(v(b.prime().name));
  if (b.is_ex()) throw std::invalid_argument("eval_nf: existential block");
  BigNat out(0);
  for (const auto& s : b.sum().summands) out = out + eval_nf(s, v, opt);
  return out;
}

inline BigNat eval_nf(const Conj& c, const Valuation& v, const EvalOptions& opt) {
  BigNat out(1);
  for (const auto& f : c.factors) {
    if (!f.vars.empty()) throw std::invalid_argument("eval_nf: quantified factor");
    out = out * pow(eval_nf(f.base, v, opt), eval_nf(f.exp, v, opt), opt.max_digits);
  }
  return out;
}

inline BigNat eval_nf(const NF& e, const Valuation& v, const EvalOptions& opt = {}) {
  if (is_conj(e)) return eval_nf(as_conj(e), v, opt);
  BigNat out(0);
  for (const auto& s : as_sum(e).summands) out = out + eval_nf(s, v, opt);
  return out;
}

// --- rule audits --------------------------------------------------------------

enum class AuditVerdict { Equal, StrictlyLess, Violation };

inline const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Equal: return "equal";
    case AuditVerdict::StrictlyLess: return "strictly-less";
    case AuditVerdict::Violation: return "VIOLATION";
  }
  return "?";
}

struct AuditReport {
  std::string rule;
  bool invertible = false;
  BigNat premise_product;
  BigNat conclusion_value;
  AuditVerdict verdict = AuditVerdict::Violation;

  bool ok() const { return verdict != AuditVerdict::Violation; }
};

// Verdict for one rule instance: invertible rules must preserve the value
// exactly, non-invertible rules must strictly decrease it (premises of a
// multi-premise rule are multiplied).
inline AuditReport audit_rule_instance(const std::string& rule_name, bool invertible,
                                       const std::vector<Sequent>& premises,
                                       const Sequent& conclusion, const Valuation& v,
                                       const EvalOptions& opt = {}) {
  AuditReport r;
  r.rule = rule_name;
  r.invertible = invertible;
  r.premise_product = BigNat(1);
  for (const auto& p : premises) r.premise_product = r.premise_product * eval_sequent(p, v, opt);
  r.conclusion_value = eval_sequent(conclusion, v, opt);
  if (r.premise_product == r.conclusion_value)
    r.verdict = invertible ? AuditVerdict::Equal : AuditVerdict::Violation;
  else if (r.premise_product < r.conclusion_value)
    r.verdict = invertible ? AuditVerdict::Violation : AuditVerdict::StrictlyLess;
  else
    r.verdict = AuditVerdict::Violation;
  return r;
}

// --- the inequality lemmas -----------------------------------------------------

struct Range {
  unsigned long lo = 2, hi = 4;
};

struct LemmaRanges {
  Range F{2, 6}, G{3, 6}, H{2, 6};      // lemmas (31)-(33)
  Range fF{2, 5}, fG{2, 5}, fH{2, 5};   // final lemma
  unsigned long max_digits = BigNat::kDefaultMaxDigits;
};

struct LemmaCase {
  std::string lemma;
  unsigned long F = 0, G = 0, H = 0;
};

struct LemmaReport {
  unsigned long checked = 0;
  std::vector<LemmaCase> violations;
  std::vector<LemmaCase> skipped_overflow;
  bool ok() const { return violations.empty(); }
};

// Exhaustively verifies over the given ranges:
//   (31) G^F - G - 1 >= G^{F-1}                 (F >= 2, G >= 3)
//   (32) 2^{G^{F-1}} >= F G                     (F >= 2, G >= 3)
//   (33) F H^G G >= F H^{G-1} G + 1             (F, H >= 2, G >= 3)
//   final lemma: 2^{H^{G^F} - H} > G^{F H^G}    (F, G, H >= 2)
// Points whose towers exceed the digit guard are reported as skipped.
inline LemmaReport check_inequality_lemmas(const LemmaRanges& r = {}) {
  LemmaReport rep;
  using boost::multiprecision::pow;
  auto guarded_pow = [&](const cpp_int& b, const cpp_int& e) -> cpp_int {
    return explog::pow(BigNat(b), BigNat(e), r.max_digits).value();
  };

  for (unsigned long F = r.F.lo; F <= r.F.hi; ++F)
    for (unsigned long G = r.G.lo; G <= r.G.hi; ++G) {
      try {
        cpp_int gf = guarded_pow(G, F);
        cpp_int gf1 = guarded_pow(G, F - 1);
        ++rep.checked;
        if (!(gf - G - 1 >= gf1)) rep.violations.push_back({"(31)", F, G, 0});
        ++rep.checked;
        if (!(guarded_pow(2, gf1) >= cpp_int(F) * G)) rep.violations.push_back({"(32)", F, G, 0});
      } catch (const EvalOverflow&) {
        rep.skipped_overflow.push_back({"(31)/(32)", F, G, 0});
      }
      for (unsigned long H = r.H.lo; H <= r.H.hi; ++H) {
        try {
          cpp_int hg = guarded_pow(H, G);
          cpp_int hg1 = guarded_pow(H, G - 1);
          ++rep.checked;
          if (!(cpp_int(F) * hg * G >= cpp_int(F) * hg1 * G + 1))
            rep.violations.push_back({"(33)", F, G, H});
        } catch (const EvalOverflow&) {
          rep.skipped_overflow.push_back({"(33)", F, G, H});
        }
      }
    }

  for (unsigned long F = r.fF.lo; F <= r.fF.hi; ++F)
    for (unsigned long G = r.fG.lo; G <= r.fG.hi; ++G)
      for (unsigned long H = r.fH.lo; H <= r.fH.hi; ++H) {
        try {
          cpp_int gf = guarded_pow(G, F);
          cpp_int hgf = guarded_pow(H, gf);
          cpp_int lhs = guarded_pow(2, hgf - H);
          cpp_int rhs = guarded_pow(G, cpp_int(F) * guarded_pow(H, G));
          ++rep.checked;
          if (!(lhs > rhs)) rep.violations.push_back({"final", F, G, H});
        } catch (const EvalOverflow&) {
          rep.skipped_overflow.push_back({"final", F, G, H});
        }
      }

  return rep;
}

// Conditional lemma: if the final inequality holds, then
// I^{H^{G^F} Gamma} > (G^F)^{H^G Gamma} I^{H Gamma} for F,G,H,I >= 2, Gamma >= 1.
// Verified directly on a small grid.
inline LemmaReport check_rule_inequality(unsigned long lo = 2, unsigned long hi = 3,
                                         unsigned long gamma_hi = 2,
                                         unsigned long max_digits = BigNat::kDefaultMaxDigits) {
  LemmaReport rep;
  auto gp = [&](const cpp_int& b, const cpp_int& e) {
    return explog::pow(BigNat(b), BigNat(e), max_digits).value();
  };
  for (unsigned long F = lo; F <= hi; ++F)
    for (unsigned long G = lo; G <= hi; ++G)
      for (unsigned long H = lo; H <= hi; ++H)
        for (unsigned long I = lo; I <= hi; ++I)
          for (unsigned long gam = 1; gam <= gamma_hi; ++gam) {
            try {
              cpp_int gf = gp(G, F);
              cpp_int lhs = gp(I, gp(H, gf) * gam);
              cpp_int rhs = gp(gf, gp(H, G) * gam) * gp(I, cpp_int(H) * gam);
              ++rep.checked;
              if (!(lhs > rhs)) rep.violations.push_back({"rule-ineq", F, G, H});
            } catch (const EvalOverflow&) {
              rep.skipped_overflow.push_back({"rule-ineq", F, G, H});
            }
          }
  return rep;
}

// --- the G3ip counterexample ----------------------------------------------------

// In G3ip the left-implication rule keeps its principal formula, and its
// inequality reading c^{b^a gamma} > a^{b^a gamma} c^{b gamma} fails whenever
// a = c: the conclusion can never strictly exceed the first premise.
struct G3ipCounterexample {
  unsigned long a = 2, b = 2, c = 2, gamma = 1;
  BigNat conclusion_value;
  BigNat premise_product;
  bool inequality_holds = false;
};

inline G3ipCounterexample check_g3ip_failure() {
  G3ipCounterexample cx;
  BigNat a(cx.a), b(cx.b), c(cx.c), gamma(cx.gamma);
  BigNat ba = pow(b, a);
  cx.conclusion_value = pow(c, ba * gamma);
  cx.premise_product = pow(a, ba * gamma) * pow(c, b * gamma);
  cx.inequality_holds = cx.conclusion_value > cx.premise_product;
  return cx;
}

// --- top lemma and budgets --------------------------------------------------------

// True iff F is isomorphic to top, i.e. the simplification rules rewrite it
// to top; agrees with eval_formula(f, v) == 1 for every admissible valuation.
inline bool is_top_isomorphic(const Formula& f) {
  return simplify_top(f).is(Formula::Kind::Top);
}

// Value of the sequent after top simplification. Any G4ip derivation of s
// contains at most this many non-invertible rule applications. A goal that
// simplifies to top is rejected: the interpretation requires simplified
// sequents, and such goals need no proof search to begin with.
inline BigNat termination_budget(const Sequent& s, const Valuation& v,
                                 const EvalOptions& opt = {}) {
  Sequent t = simplify_top(s);
  if (t.goal.is(Formula::Kind::Top))
    throw std::invalid_argument("termination_budget: goal simplifies to top");
  if (contains_quantifier(sequent_formula(t)))
    throw std::invalid_argument("termination_budget: quantified sequent");
  return eval_sequent(t, v, opt);
}

}  // namespace explog
