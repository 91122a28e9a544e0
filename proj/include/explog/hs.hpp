#pragma once

// The high-school sequent calculus HS: five non-invertible rules whose
// conclusions and premises are expressions over the normalization operators.
// A proof of a product is a forest, one tree per rule application; a rule's
// premise slot holds the forest proving its (product) premise expression.
// The imp_l_imp rule has a single premise that is literally the product of
// the two G4ip premises, matching the product interpretation of multiple
// premises.
//
// Invertible G4ip rules have no HS counterpart: under the normal-form image
// they are equalities, so the translation from G4ip erases them (a two
// premise invertible node concatenates the forests of its premises).
//
// The calculus is propositional; existential blocks and quantified factors
// are rejected.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "explog/formula.hpp"
#include "explog/g4ip.hpp"
#include "explog/interp.hpp"
#include "explog/normal_form.hpp"
#include "explog/normalize.hpp"

namespace explog {

enum class HsRule { Axiom, OrR1, OrR2, ImpLAtomP, ImpLImpP };

inline const char* to_string(HsRule r) {
  switch (r) {
    case HsRule::Axiom: return "axiom";
    case HsRule::OrR1: return "or_r1";
    case HsRule::OrR2: return "or_r2";
    case HsRule::ImpLAtomP: return "imp_l_atom";
    case HsRule::ImpLImpP: return "imp_l_imp";
  }
  return "?";
}

inline std::optional<HsRule> hs_rule_from_string(const std::string& s) {
  for (HsRule r : {HsRule::Axiom, HsRule::OrR1, HsRule::OrR2, HsRule::ImpLAtomP,
                   HsRule::ImpLImpP})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

// Schema components; which fields are set depends on the rule:
//   axiom:       p, e
//   or_r1/or_r2: c1, c2, e
//   imp_l_atom:  c, c0, p, e
//   imp_l_imp:   c, c1, c2, e1, e2
struct HsInst {
  std::optional<Prime> p;
  std::optional<Conj> c;
  std::optional<Conj> c0;
  std::optional<Conj> c1;
  std::optional<Conj> c2;
  std::optional<NF> e;
  std::optional<NF> e1;
  std::optional<NF> e2;
};

struct HsDerivation {
  HsRule rule = HsRule::Axiom;
  Conj conclusion;  // value of the schema conclusion on the instantiation
  HsInst inst;
  std::vector<HsDerivation> premises;  // forest proving the premise expression

  size_t node_count() const {
    size_t n = 1;
    for (const auto& t : premises) n += t.node_count();
    return n;
  }
};

using HsForest = std::vector<HsDerivation>;

// A full HS proof: a forest whose conclusions multiply (mod commutativity)
// to `conclusion`. The empty forest proves the unit.
struct HsProof {
  Conj conclusion;
  HsForest trees;

  size_t node_count() const {
    size_t n = 0;
    for (const auto& t : trees) n += t.node_count();
    return n;
  }
  // Convenience for single-tree proofs (e.g. the paper's examples).
  const HsDerivation& single() const {
    if (trees.size() != 1) throw std::logic_error("HsProof: not a single tree");
    return trees[0];
  }
};

namespace detail {
inline const Conj& req(const std::optional<Conj>& o, const char* what) {
  if (!o) throw std::invalid_argument(std::string("missing instantiation field ") + what);
  return *o;
}
inline const NF& req(const std::optional<NF>& o, const char* what) {
  if (!o) throw std::invalid_argument(std::string("missing instantiation field ") + what);
  return *o;
}
inline const Prime& req(const std::optional<Prime>& o, const char* what) {
  if (!o) throw std::invalid_argument(std::string("missing instantiation field ") + what);
  return *o;
}
}  // namespace detail

// Value of the schema conclusion expression on an instantiation.
inline Conj hs_schema_conclusion(HsRule rule, const HsInst& i) {
  using detail::req;
  switch (rule) {
    case HsRule::Axiom: {
      const Prime& p = req(i.p, "p");
      Conj pc = prime_conj(p.name, p.args);
      return explogone(Base(p), distribone(pc, req(i.e, "e")));
    }
    case HsRule::OrR1:
    case HsRule::OrR2: {
      Sum d({req(i.c1, "c1"), req(i.c2, "c2")});
      return explogone(Base(std::move(d)), req(i.e, "e"));
    }
    case HsRule::ImpLAtomP: {
      const Prime& p = req(i.p, "p");
      Conj pc = prime_conj(p.name, p.args);
      Conj imp_part = explogn(req(i.c0, "c0"), NF(pc));
      return explogn(req(i.c, "c"), distribone(imp_part, distribone(pc, req(i.e, "e"))));
    }
    case HsRule::ImpLImpP: {
      Conj inner = explogn(req(i.c2, "c2"), req(i.e1, "e1"));
      Conj imp_part = explogn(req(i.c1, "c1"), NF(std::move(inner)));
      return explogn(req(i.c, "c"), distribone(imp_part, req(i.e2, "e2")));
    }
  }
  throw std::invalid_argument("unknown HS rule");
}

// Value of the schema premise expression; the axiom has none.
inline std::optional<Conj> hs_schema_premise(HsRule rule, const HsInst& i) {
  using detail::req;
  switch (rule) {
    case HsRule::Axiom: return std::nullopt;
    case HsRule::OrR1: return explogn(req(i.c1, "c1"), req(i.e, "e"));
    case HsRule::OrR2: return explogn(req(i.c2, "c2"), req(i.e, "e"));
    case HsRule::ImpLAtomP: {
      const Prime& p = req(i.p, "p");
      Conj pc = prime_conj(p.name, p.args);
      NF expanded = expand_partial(req(i.c0, "c0"));
      return explogn(req(i.c, "c"), distrib(expanded, distribone(pc, req(i.e, "e"))));
    }
    case HsRule::ImpLImpP: {
      Conj ge = explogn(req(i.c2, "c2"), req(i.e1, "e1"));  // image of F -> G
      Conj gh = explogn(req(i.c1, "c1"), expand_partial(req(i.c2, "c2")));  // image of G -> H
      Conj prem1 = explogn(ge, distribone(gh, req(i.e2, "e2")));
      Conj prem2 = explogn(req(i.c, "c"), distrib(expand_partial(req(i.c1, "c1")), req(i.e2, "e2")));
      return ntimes(prem1, prem2);
    }
  }
  throw std::invalid_argument("unknown HS rule");
}

// --- checking -------------------------------------------------------------------

struct HsCheckResult {
  bool ok = true;
  std::vector<size_t> path;
  std::string message;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline Conj forest_product(const HsForest& trees) {
  Conj out;
  for (const auto& t : trees) out = ntimes(out, t.conclusion);
  return out;
}

inline bool check_hs_rec(const HsDerivation& t, HsCheckResult& res) {
  Conj want;
  std::optional<Conj> prem;
  try {
    want = hs_schema_conclusion(t.rule, t.inst);
    prem = hs_schema_premise(t.rule, t.inst);
  } catch (const std::invalid_argument& e) {
    res.ok = false;
    res.message = e.what();
    return false;
  }
  // comparisons are mod commutativity: context multiplication commutes
  if (!nf_equal(want, t.conclusion, true)) {
    res.ok = false;
    res.message = "conclusion differs from schema expression";
    return false;
  }
  Conj have = forest_product(t.premises);
  if (!prem) {
    if (!t.premises.empty()) {
      res.ok = false;
      res.message = "axiom with premises";
      return false;
    }
    return true;
  }
  if (!nf_equal(*prem, have, true)) {
    res.ok = false;
    res.message = "premise forest does not multiply to the schema premise";
    return false;
  }
  for (size_t k = 0; k < t.premises.size(); ++k) {
    size_t mark = res.path.size();
    res.path.push_back(k);
    if (!check_hs_rec(t.premises[k], res)) return false;
    res.path.resize(mark);
  }
  return true;
}

}  // namespace detail

inline HsCheckResult check_hs(const HsProof& proof) {
  HsCheckResult res;
  if (!nf_equal(detail::forest_product(proof.trees), proof.conclusion, true)) {
    res.ok = false;
    res.message = "forest product differs from recorded conclusion";
    return res;
  }
  for (size_t k = 0; k < proof.trees.size(); ++k) {
    res.path.assign(1, k);
    if (!detail::check_hs_rec(proof.trees[k], res)) return res;
  }
  res.path.clear();
  return res;
}

inline HsCheckResult check_hs(const HsDerivation& tree) {
  return check_hs(HsProof{tree.conclusion, {tree}});
}

// --- pattern recognition ----------------------------------------------------------

namespace detail {

inline bool is_atom_factor(const Factor& f, const Prime& p) {
  return f.vars.empty() && f.exp.is_unit() && f.base.is_prime() && f.base.prime() == p;
}
inline bool is_atom_factor(const Factor& f) {
  return f.vars.empty() && f.exp.is_unit() && f.base.is_prime();
}

inline std::optional<Conj> remove_atom_occurrence(const Conj& c, const Prime& p) {
  for (size_t i = 0; i < c.factors.size(); ++i)
    if (is_atom_factor(c.factors[i], p)) {
      auto fs = c.factors;
      fs.erase(fs.begin() + static_cast<long>(i));
      return Conj(std::move(fs));
    }
  return std::nullopt;
}

inline void require_propositional(const Conj& c) {
  for (const auto& f : c.factors) {
    if (!f.vars.empty() || f.base.is_ex())
      throw std::invalid_argument("HS is propositional: quantified normal form");
    if (f.base.is_sum())
      for (const auto& s : f.base.sum().summands) require_propositional(s);
    require_propositional(f.exp);
  }
}

}  // namespace detail

// Schema instantiations whose conclusion expression reproduces e (compared
// mod commutativity). The axiom and disjunction patterns are matched over
// the whole product; the implication rules are matched at the granularity
// the proof search uses, i.e. on single-factor conclusions with a singleton
// goal part.
inline std::vector<std::pair<HsRule, HsInst>> match_patterns(const Conj& e) {
  detail::require_propositional(e);
  std::vector<std::pair<HsRule, HsInst>> out;
  if (e.is_unit()) return out;

  auto verify = [&](HsRule r, const HsInst& i) {
    return nf_equal(hs_schema_conclusion(r, i), e, true);
  };

  // axiom: every factor is p^{p^1 c_i}; e-part is the sum of the residues
  if (e.factors[0].base.is_prime() && e.factors[0].vars.empty()) {
    const Prime& p = e.factors[0].base.prime();
    bool all = true;
    std::vector<Conj> residues;
    for (const auto& f : e.factors) {
      if (!(f.vars.empty() && f.base.is_prime() && f.base.prime() == p)) { all = false; break; }
      auto res = detail::remove_atom_occurrence(f.exp, p);
      if (!res) { all = false; break; }
      residues.push_back(std::move(*res));
    }
    if (all) {
      HsInst i;
      i.p = p;
      i.e = nf_from_summands(std::move(residues));
      if (verify(HsRule::Axiom, i)) out.emplace_back(HsRule::Axiom, std::move(i));
    }
  }

  // disjunction rules: every factor shares one two-summand sum base
  if (e.factors[0].base.is_sum() && e.factors[0].vars.empty() &&
      e.factors[0].base.sum().size() == 2) {
    Sum d = e.factors[0].base.sum();
    bool all = true;
    std::vector<Conj> exps;
    for (const auto& f : e.factors) {
      if (!(f.vars.empty() && f.base.is_sum() && nf_equal(NF(Conj({factor(f.base)})),
                                                          NF(Conj({factor(Base(d))})), true))) {
        all = false;
        break;
      }
      exps.push_back(f.exp);
    }
    if (all) {
      HsInst i;
      i.c1 = d.summands[0];
      i.c2 = d.summands[1];
      i.e = nf_from_summands(std::move(exps));
      if (verify(HsRule::OrR1, i)) {
        out.emplace_back(HsRule::OrR1, i);
        out.emplace_back(HsRule::OrR2, std::move(i));
      }
    }
  }

  // implication rules on single-factor conclusions
  if (e.size() == 1) {
    const Factor& f = e.factors[0];
    const Conj& E = f.exp;
    Conj goal_c({factor(f.base)});

    // imp_l_atom: for each atom p present, consume every implication whose
    // exponent contains p. The step is invertible in the classic sense, so
    // the maximal instance subsumes the partial ones.
    std::vector<Prime> seen;
    for (size_t pi = 0; pi < E.factors.size(); ++pi) {
      if (!detail::is_atom_factor(E.factors[pi])) continue;
      const Prime& p = E.factors[pi].base.prime();
      bool dup = false;
      for (const auto& q : seen) dup = dup || q == p;
      if (dup) continue;
      seen.push_back(p);
      std::vector<Factor> group, rest;
      for (size_t k = 0; k < E.factors.size(); ++k) {
        if (k == pi) continue;
        auto residue = detail::remove_atom_occurrence(E.factors[k].exp, p);
        if (residue)
          group.push_back(Factor{{}, E.factors[k].base, std::move(*residue)});
        else
          rest.push_back(E.factors[k]);
      }
      if (group.empty()) continue;
      HsInst i;
      i.p = p;
      i.c = goal_c;
      i.c0 = Conj(std::move(group));
      i.e = NF(Conj(std::move(rest)));
      if (verify(HsRule::ImpLAtomP, i)) out.emplace_back(HsRule::ImpLAtomP, std::move(i));
    }

    // imp_l_imp: pick a principal factor g and a pivot implication w inside
    // its exponent; the pivot is read as the antecedent implication F -> G
    for (size_t gi = 0; gi < E.factors.size(); ++gi) {
      const Factor& g = E.factors[gi];
      for (size_t wi = 0; wi < g.exp.factors.size(); ++wi) {
        const Factor& w = g.exp.factors[wi];
        if (w.exp.is_unit()) continue;  // atomic or disjunctive conjunct, not an implication
        auto c1fs = g.exp.factors;
        c1fs.erase(c1fs.begin() + static_cast<long>(wi));
        std::vector<Factor> rest;
        for (size_t k = 0; k < E.factors.size(); ++k)
          if (k != gi) rest.push_back(E.factors[k]);
        HsInst i;
        i.c = goal_c;
        i.c1 = Conj({Factor{{}, g.base, Conj(std::move(c1fs))}});
        i.c2 = Conj({factor(w.base)});
        i.e1 = NF(w.exp);
        i.e2 = NF(Conj(std::move(rest)));
        if (verify(HsRule::ImpLImpP, i)) out.emplace_back(HsRule::ImpLImpP, std::move(i));
      }
    }
  }
  return out;
}

// --- proof search --------------------------------------------------------------------

namespace detail {

// Depth-first search, one tree per factor. The ->lP step is invertible in
// the classic sense, so the first applicable instance is taken without
// backtracking; disjunction and ->l-> choices backtrack.
class HsSearch {
 public:
  std::optional<HsForest> forest(const Conj& e) {
    HsForest out;
    for (const auto& f : e.factors) {
      auto t = tree(f);
      if (!t) return std::nullopt;
      out.push_back(std::move(*t));
    }
    return out;
  }

 private:
  std::optional<HsDerivation> tree(const Factor& f) {
    if (!f.vars.empty() || f.base.is_ex())
      throw std::invalid_argument("prove_hs: quantified normal form");
    Conj goal_conj({f});
    auto insts = match_patterns(goal_conj);
    // axiom closes immediately
    for (auto& [rule, inst] : insts)
      if (rule == HsRule::Axiom)
        return HsDerivation{rule, hs_schema_conclusion(rule, inst), inst, {}};
    // ->lP is safe to apply eagerly: no backtracking across instances
    for (auto& [rule, inst] : insts) {
      if (rule != HsRule::ImpLAtomP) continue;
      return attempt(rule, inst);
    }
    // remaining choices: ->l-> candidates first, then the disjunction rules
    for (auto& [rule, inst] : insts) {
      if (rule != HsRule::ImpLImpP) continue;
      if (auto t = attempt(rule, inst)) return t;
    }
    for (auto& [rule, inst] : insts) {
      if (rule != HsRule::OrR1 && rule != HsRule::OrR2) continue;
      if (auto t = attempt(rule, inst)) return t;
    }
    return std::nullopt;
  }

  std::optional<HsDerivation> attempt(HsRule rule, const HsInst& inst) {
    Conj prem = *hs_schema_premise(rule, inst);
    auto sub = forest(prem);
    if (!sub) return std::nullopt;
    return HsDerivation{rule, hs_schema_conclusion(rule, inst), inst, std::move(*sub)};
  }
};

}  // namespace detail

// Direct HS proof search on an expanded conjunction; complete for the
// normal forms of (top-simplified) provable formulas.
inline std::optional<HsProof> prove_hs(const Conj& e) {
  detail::require_propositional(e);
  detail::HsSearch search;
  auto trees = search.forest(e);
  if (!trees) return std::nullopt;
  return HsProof{e, std::move(*trees)};
}

// Normalizes the formula and searches; sums are proved via their suspended
// form (d)^1, whose expansion is the flat sum. Residual tops are replaced by
// a fresh unit implication first, as in the G4ip prover, so the normal form
// is free of degenerate unit subterms.
inline std::optional<HsProof> prove_hs(const Formula& goal) {
  Sequent t = detail::desugar_top(Sequent({}, goal));
  NF e = enf(t.goal);
  if (is_conj(e)) return prove_hs(as_conj(e));
  return prove_hs(Conj({factor(Base(as_sum(e)))}));
}

// --- translation from G4ip --------------------------------------------------------------

namespace detail {

struct G4ToHs {
  const ProverConfig& cfg;

  HsForest forest(const Derivation& d) {
    const Sequent& s = d.conclusion;
    switch (d.rule) {
      // invertible rules are equalities of the normal-form images: erase
      case RuleTag::ImpR:
      case RuleTag::AndL:
      case RuleTag::ImpLAnd:
      case RuleTag::ImpLOr:
        return forest(d.premises[0]);
      case RuleTag::AndR:
      case RuleTag::OrL: {
        HsForest out = forest(d.premises[0]);
        HsForest two = forest(d.premises[1]);
        out.insert(out.end(), two.begin(), two.end());
        return out;
      }
      case RuleTag::Axiom: {
        HsInst i;
        i.p = Prime{s.goal.name(), s.goal.args()};
        std::vector<Formula> rest = s.context;
        for (size_t k = 0; k < rest.size(); ++k)
          if (rest[k] == s.goal) {
            rest.erase(rest.begin() + static_cast<long>(k));
            break;
          }
        i.e = enf_context(rest);
        return {HsDerivation{HsRule::Axiom, hs_schema_conclusion(HsRule::Axiom, i), i, {}}};
      }
      case RuleTag::OrR1:
      case RuleTag::OrR2: {
        HsInst i;
        i.c1 = enfpos(s.goal.lhs());
        i.c2 = enfpos(s.goal.rhs());
        i.e = enf_context(s.context);
        HsRule r = d.rule == RuleTag::OrR1 ? HsRule::OrR1 : HsRule::OrR2;
        return {HsDerivation{r, hs_schema_conclusion(r, i), i, forest(d.premises[0])}};
      }
      case RuleTag::ImpLAtom: {
        const Formula& principal = s.context[*d.principal];
        HsInst i;
        i.p = Prime{principal.lhs().name(), principal.lhs().args()};
        i.c0 = enfpos(principal.rhs());
        i.c = enfpos(s.goal);
        std::vector<Formula> rest = s.context;
        rest.erase(rest.begin() + static_cast<long>(*d.principal));
        for (size_t k = 0; k < rest.size(); ++k)
          if (rest[k] == principal.lhs()) {
            rest.erase(rest.begin() + static_cast<long>(k));
            break;
          }
        i.e = enf_context(rest);
        return {HsDerivation{HsRule::ImpLAtomP, hs_schema_conclusion(HsRule::ImpLAtomP, i), i,
                             forest(d.premises[0])}};
      }
      case RuleTag::ImpLImp: {
        const Formula& principal = s.context[*d.principal];
        const Formula& fg = principal.lhs();
        HsInst i;
        i.c = enfpos(s.goal);
        i.c1 = enfpos(principal.rhs());
        i.c2 = enfpos(fg.rhs());
        i.e1 = enf(fg.lhs());
        std::vector<Formula> rest = s.context;
        rest.erase(rest.begin() + static_cast<long>(*d.principal));
        i.e2 = enf_context(rest);
        HsForest prem = forest(d.premises[0]);
        HsForest two = forest(d.premises[1]);
        prem.insert(prem.end(), two.begin(), two.end());
        return {HsDerivation{HsRule::ImpLImpP, hs_schema_conclusion(HsRule::ImpLImpP, i), i,
                             std::move(prem)}};
      }
      case RuleTag::FalsumL:
        throw std::invalid_argument("g4ip_to_hs: ex-falso nodes have no HS image");
    }
    throw std::invalid_argument("g4ip_to_hs: unknown rule");
  }
};

}  // namespace detail

// Transforms a checked G4ip derivation into an HS proof of the normal form
// of its conclusion: invertible nodes vanish, non-invertible nodes map one
// to one onto HS nodes with matching tags.
inline HsProof g4ip_to_hs(const Derivation& d, const ProverConfig& cfg = {}) {
  if (auto res = check(d, cfg); !res)
    throw std::invalid_argument("g4ip_to_hs: derivation does not check: " + res.message);
  detail::G4ToHs tr{cfg};
  return HsProof{enf_sequent(d.conclusion), tr.forest(d)};
}

// --- translation to G4ip ---------------------------------------------------------------

namespace detail {

// Reconstructs a G4ip derivation from an HS proof by re-introducing the
// invertible adapter steps the HS image erased. Each target sequent is
// saturated with invertible rules; the resulting leaves correspond one to
// one (mod commutativity) to the factors of the forest's conclusions, and
// each tree's rule is replayed at its leaves.
class HsToG4 {
 public:
  explicit HsToG4(const ProverConfig& cfg) : cfg_(cfg) {}

  Derivation run(const HsProof& proof) {
    Formula goal = simplify_top(embed(NF(proof.conclusion)));
    if (goal.is(Formula::Kind::Top))
      throw std::invalid_argument("hs_to_g4ip: conclusion is the unit");
    auto ds = build(proof.trees, {Sequent({}, std::move(goal))});
    return std::move(ds[0]);
  }

 private:
  const ProverConfig& cfg_;

  static Factor leaf_image(const Sequent& s) {
    Conj img = enf_sequent(s);
    if (img.size() != 1) throw std::logic_error("hs_to_g4ip: leaf image is not a single factor");
    return canonicalize(Conj({img.factors[0]})).factors[0];
  }

  void collect_leaves(const Sequent& s, std::vector<Sequent>& out) {
    for (const auto& app : applicable_rules(s, cfg_)) {
      if (!invertible(app.rule)) continue;
      for (const auto& prem : rule_premises(s, app, cfg_)) collect_leaves(prem, out);
      return;
    }
    out.push_back(s);
  }

  Derivation rebuild(const Sequent& s, std::vector<Derivation>& leaves, size_t& next) {
    for (const auto& app : applicable_rules(s, cfg_)) {
      if (!invertible(app.rule)) continue;
      std::vector<Derivation> subs;
      for (const auto& prem : rule_premises(s, app, cfg_))
        subs.push_back(rebuild(prem, leaves, next));
      return Derivation{app.rule, s, app.principal, std::move(subs)};
    }
    return std::move(leaves[next++]);
  }

  // One output derivation per target; the forest's trees are distributed
  // over the pooled saturated leaves by image.
  std::vector<Derivation> build(const HsForest& trees, const std::vector<Sequent>& targets) {
    std::vector<std::vector<Sequent>> leaves(targets.size());
    struct Slot {
      size_t target, index;
    };
    struct FactorLess {
      bool operator()(const Factor& a, const Factor& b) const { return compare(a, b) < 0; }
    };
    std::map<Factor, std::vector<Slot>, FactorLess> pool;  // canonical image -> open slots
    for (size_t t = 0; t < targets.size(); ++t) {
      collect_leaves(targets[t], leaves[t]);
      for (size_t k = 0; k < leaves[t].size(); ++k)
        pool[leaf_image(leaves[t][k])].push_back({t, k});
    }

    // assign each tree the leaves matching its conclusion factors
    std::vector<std::vector<Slot>> assigned(trees.size());
    for (size_t ti = 0; ti < trees.size(); ++ti) {
      for (const auto& f : canonicalize(trees[ti].conclusion).factors) {
        auto it = pool.find(f);
        if (it == pool.end() || it->second.empty())
          throw std::logic_error("hs_to_g4ip: no saturated leaf matches a conclusion factor");
        assigned[ti].push_back(it->second.back());
        it->second.pop_back();
      }
    }
    for (const auto& [k, v] : pool)
      if (!v.empty()) throw std::logic_error("hs_to_g4ip: unmatched saturated leaf");

    // replay each tree's rule at its leaves
    std::vector<std::vector<Derivation>> leaf_derivs(targets.size());
    for (size_t t = 0; t < targets.size(); ++t)
      leaf_derivs[t].resize(leaves[t].size());
    for (size_t ti = 0; ti < trees.size(); ++ti) {
      std::vector<Sequent> premise_targets;
      std::vector<std::pair<Slot, std::pair<RuleApp, size_t>>> apps;  // slot -> app + #premises
      for (const Slot& slot : assigned[ti]) {
        auto [app, prems] = replay(trees[ti], leaves[slot.target][slot.index]);
        apps.push_back({slot, {app, prems.size()}});
        for (auto& p : prems) premise_targets.push_back(std::move(p));
      }
      std::vector<Derivation> sub =
          premise_targets.empty() ? std::vector<Derivation>{}
                                  : build(trees[ti].premises, premise_targets);
      size_t cursor = 0;
      for (auto& [slot, app_info] : apps) {
        std::vector<Derivation> prems;
        for (size_t k = 0; k < app_info.second; ++k) prems.push_back(std::move(sub[cursor++]));
        leaf_derivs[slot.target][slot.index] =
            Derivation{app_info.first.rule, leaves[slot.target][slot.index],
                       app_info.first.principal, std::move(prems)};
      }
    }

    std::vector<Derivation> out;
    out.reserve(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
      size_t next = 0;
      out.push_back(rebuild(targets[t], leaf_derivs[t], next));
    }
    return out;
  }

  // The G4ip rule application of one tree at one saturated leaf, plus the
  // premise sequents it generates.
  std::pair<RuleApp, std::vector<Sequent>> replay(const HsDerivation& t, const Sequent& leaf) {
    switch (t.rule) {
      case HsRule::Axiom: return {{RuleTag::Axiom, std::nullopt}, {}};
      case HsRule::OrR1:
        return {{RuleTag::OrR1, std::nullopt},
                rule_premises(leaf, {RuleTag::OrR1, std::nullopt}, cfg_)};
      case HsRule::OrR2:
        return {{RuleTag::OrR2, std::nullopt},
                rule_premises(leaf, {RuleTag::OrR2, std::nullopt}, cfg_)};
      case HsRule::ImpLAtomP: {
        const Prime& p = *t.inst.p;
        Conj want = canonicalize(*t.inst.c0);
        std::optional<size_t> exact, fallback;
        for (size_t k = 0; k < leaf.context.size(); ++k) {
          const Formula& f = leaf.context[k];
          if (!(f.is(Formula::Kind::Imp) && f.lhs().is(Formula::Kind::Atom) &&
                f.lhs().name() == p.name && f.lhs().args() == p.args))
            continue;
          if (!fallback) fallback = k;
          if (canonicalize(enfpos(f.rhs())) == want) {
            exact = k;
            break;
          }
        }
        auto idx = exact ? exact : fallback;
        if (!idx) throw std::logic_error("hs_to_g4ip: principal P->F not found in leaf context");
        return {{RuleTag::ImpLAtom, idx}, rule_premises(leaf, {RuleTag::ImpLAtom, idx}, cfg_)};
      }
      case HsRule::ImpLImpP: {
        Conj want_h = canonicalize(*t.inst.c1);
        Conj want_g = canonicalize(*t.inst.c2);
        NF want_f = canonicalize(*t.inst.e1);
        std::optional<size_t> exact, fallback;
        for (size_t k = 0; k < leaf.context.size(); ++k) {
          const Formula& f = leaf.context[k];
          if (!(f.is(Formula::Kind::Imp) && f.lhs().is(Formula::Kind::Imp))) continue;
          if (!fallback) fallback = k;
          if (canonicalize(enfpos(f.rhs())) == want_h &&
              canonicalize(enfpos(f.lhs().rhs())) == want_g &&
              canonicalize(enf(f.lhs().lhs())) == want_f) {
            exact = k;
            break;
          }
        }
        auto idx = exact ? exact : fallback;
        if (!idx)
          throw std::logic_error("hs_to_g4ip: principal (F->G)->H not found in leaf context");
        return {{RuleTag::ImpLImp, idx}, rule_premises(leaf, {RuleTag::ImpLImp, idx}, cfg_)};
      }
    }
    throw std::logic_error("hs_to_g4ip: unknown rule");
  }
};

}  // namespace detail

// Transforms a checked HS proof into a G4ip derivation of the (simplified)
// embedding of its conclusion. The tree of non-invertible rules is replayed;
// invertible adapter nodes are inserted where products and exponents must be
// split into sequent structure.
inline Derivation hs_to_g4ip(const HsProof& proof, const ProverConfig& cfg = {}) {
  if (auto res = check_hs(proof); !res)
    throw std::invalid_argument("hs_to_g4ip: proof does not check: " + res.message);
  detail::HsToG4 tr(cfg);
  return tr.run(proof);
}

inline Derivation hs_to_g4ip(const HsDerivation& tree, const ProverConfig& cfg = {}) {
  return hs_to_g4ip(HsProof{tree.conclusion, {tree}}, cfg);
}

// --- the measure on HS proofs -------------------------------------------------------------

struct HsAuditEntry {
  std::string rule;
  BigNat premise_value;
  BigNat conclusion_value;
  bool strict = false;
};

namespace detail {
inline void hs_audit_rec(const HsDerivation& t, const Valuation& v, const EvalOptions& opt,
                         std::vector<HsAuditEntry>& out) {
  HsAuditEntry e;
  e.rule = to_string(t.rule);
  auto prem = hs_schema_premise(t.rule, t.inst);
  e.premise_value = prem ? eval_nf(*prem, v, opt) : BigNat(1);
  e.conclusion_value = eval_nf(t.conclusion, v, opt);
  e.strict = e.premise_value < e.conclusion_value;
  out.push_back(std::move(e));
  for (const auto& sub : t.premises) hs_audit_rec(sub, v, opt, out);
}
}  // namespace detail

// Every HS rule strictly decreases the interpretation (atoms valued >= 2);
// returns one entry per node.
inline std::vector<HsAuditEntry> hs_value_audit(const HsProof& proof, const Valuation& v,
                                                const EvalOptions& opt = {}) {
  std::vector<HsAuditEntry> out;
  for (const auto& t : proof.trees) detail::hs_audit_rec(t, v, opt, out);
  return out;
}

}  // namespace explog
