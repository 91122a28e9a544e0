#pragma once

// The contraction-free sequent calculus G4ip for intuitionistic (minimal)
// propositional logic: rule schemas, a terminating decision procedure, proof
// trees, a node-local checker, and an independent loop-checking oracle used
// to cross-validate the prover.
//
// Minimal logic is the default: "bot" is an ordinary atom. The ex-falso
// rule for it can be enabled explicitly; it is an extension, not part of
// the calculus proper.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "explog/formula.hpp"
#include "explog/interp.hpp"

namespace explog {

enum class RuleTag {
  Axiom,
  OrR1,
  OrR2,
  ImpLAtom,  // left implication with atomic antecedent
  ImpLImp,   // left implication with implication antecedent
  ImpR,
  AndR,
  OrL,
  AndL,
  ImpLAnd,  // left implication with conjunction antecedent
  ImpLOr,   // left implication with disjunction antecedent
  FalsumL,  // ex falso, only with the flag
};

// Invertible here means premise and conclusion are isomorphic. (->lP) is
// invertible in the classic sense but not an isomorphism, so it is not in
// this set.
inline bool invertible(RuleTag t) {
  switch (t) {
    case RuleTag::ImpR:
    case RuleTag::AndR:
    case RuleTag::OrL:
    case RuleTag::AndL:
    case RuleTag::ImpLAnd:
    case RuleTag::ImpLOr: return true;
    default: return false;
  }
}

inline const char* to_string(RuleTag t) {
  switch (t) {
    case RuleTag::Axiom: return "axiom";
    case RuleTag::OrR1: return "or_r1";
    case RuleTag::OrR2: return "or_r2";
    case RuleTag::ImpLAtom: return "imp_l_atom";
    case RuleTag::ImpLImp: return "imp_l_imp";
    case RuleTag::ImpR: return "imp_r";
    case RuleTag::AndR: return "and_r";
    case RuleTag::OrL: return "or_l";
    case RuleTag::AndL: return "and_l";
    case RuleTag::ImpLAnd: return "imp_l_and";
    case RuleTag::ImpLOr: return "imp_l_or";
    case RuleTag::FalsumL: return "falsum_l";
  }
  return "?";
}

inline std::optional<RuleTag> rule_from_string(const std::string& s) {
  for (RuleTag t : {RuleTag::Axiom, RuleTag::OrR1, RuleTag::OrR2, RuleTag::ImpLAtom,
                    RuleTag::ImpLImp, RuleTag::ImpR, RuleTag::AndR, RuleTag::OrL, RuleTag::AndL,
                    RuleTag::ImpLAnd, RuleTag::ImpLOr, RuleTag::FalsumL})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

struct ProverConfig {
  bool ex_falso = false;
  std::string falsum_name = "bot";
  unsigned long max_nodes = 0;  // 0 = unlimited; search is terminating anyway
};

struct SearchLimitExceeded : std::runtime_error {
  SearchLimitExceeded() : std::runtime_error("prover node budget exceeded") {}
};

// One schema match: the rule and the principal occurrence (an index into the
// canonically sorted context; right rules have none).
struct RuleApp {
  RuleTag rule;
  std::optional<size_t> principal;
};

struct Derivation {
  RuleTag rule = RuleTag::Axiom;
  Sequent conclusion;
  std::optional<size_t> principal;
  std::vector<Derivation> premises;

  size_t node_count() const {
    size_t n = 1;
    for (const auto& p : premises) n += p.node_count();
    return n;
  }
  size_t noninvertible_count() const {
    size_t n = invertible(rule) ? 0 : 1;
    for (const auto& p : premises) n += p.noninvertible_count();
    return n;
  }
};

namespace detail {
inline bool is_falsum(const Formula& f, const ProverConfig& cfg) {
  return f.is(Formula::Kind::Atom) && f.args().empty() && f.name() == cfg.falsum_name;
}
inline bool context_has(const Sequent& s, const Formula& f) {
  for (const auto& g : s.context)
    if (g == f) return true;
  return false;
}
}  // namespace detail

// Premise sequents of one rule application; throws if the schema does not
// match the sequent at the recorded principal.
inline std::vector<Sequent> rule_premises(const Sequent& s, const RuleApp& app,
                                          const ProverConfig& cfg = {}) {
  using K = Formula::Kind;
  auto principal = [&]() -> const Formula& {
    if (!app.principal || *app.principal >= s.context.size())
      throw std::invalid_argument("rule application without valid principal");
    return s.context[*app.principal];
  };
  switch (app.rule) {
    case RuleTag::Axiom:
      if (!s.goal.is(K::Atom) || !detail::context_has(s, s.goal))
        throw std::invalid_argument("axiom: goal atom not in context");
      return {};
    case RuleTag::FalsumL: {
      if (!cfg.ex_falso) throw std::invalid_argument("falsum_l: ex-falso disabled");
      const Formula& p = principal();
      if (!detail::is_falsum(p, cfg)) throw std::invalid_argument("falsum_l: principal not falsum");
      return {};
    }
    case RuleTag::OrR1:
      if (!s.goal.is(K::Or)) throw std::invalid_argument("or_r1: goal not a disjunction");
      return {s.with_goal(s.goal.lhs())};
    case RuleTag::OrR2:
      if (!s.goal.is(K::Or)) throw std::invalid_argument("or_r2: goal not a disjunction");
      return {s.with_goal(s.goal.rhs())};
    case RuleTag::ImpR: {
      if (!s.goal.is(K::Imp)) throw std::invalid_argument("imp_r: goal not an implication");
      auto ctx = s.context;
      ctx.push_back(s.goal.lhs());
      return {Sequent(std::move(ctx), s.goal.rhs())};
    }
    case RuleTag::AndR:
      if (!s.goal.is(K::And)) throw std::invalid_argument("and_r: goal not a conjunction");
      return {s.with_goal(s.goal.lhs()), s.with_goal(s.goal.rhs())};
    case RuleTag::AndL: {
      const Formula& p = principal();
      if (!p.is(K::And)) throw std::invalid_argument("and_l: principal not a conjunction");
      return {s.without(*app.principal).with(p.lhs()).with(p.rhs())};
    }
    case RuleTag::OrL: {
      const Formula& p = principal();
      if (!p.is(K::Or)) throw std::invalid_argument("or_l: principal not a disjunction");
      return {s.without(*app.principal).with(p.lhs()),
              s.without(*app.principal).with(p.rhs())};
    }
    case RuleTag::ImpLAnd: {
      const Formula& p = principal();
      if (!p.is(K::Imp) || !p.lhs().is(K::And))
        throw std::invalid_argument("imp_l_and: principal not (G&F)->H");
      // (G /\ F -> H) becomes F -> (G -> H)
      Formula prem = Formula::imp(p.lhs().rhs(), Formula::imp(p.lhs().lhs(), p.rhs()));
      return {s.without(*app.principal).with(std::move(prem))};
    }
    case RuleTag::ImpLOr: {
      const Formula& p = principal();
      if (!p.is(K::Imp) || !p.lhs().is(K::Or))
        throw std::invalid_argument("imp_l_or: principal not (F|G)->H");
      return {s.without(*app.principal)
                  .with(Formula::imp(p.lhs().lhs(), p.rhs()))
                  .with(Formula::imp(p.lhs().rhs(), p.rhs()))};
    }
    case RuleTag::ImpLAtom: {
      const Formula& p = principal();
      if (!p.is(K::Imp) || !p.lhs().is(K::Atom))
        throw std::invalid_argument("imp_l_atom: principal not P->F");
      Sequent rest = s.without(*app.principal);
      if (!detail::context_has(rest, p.lhs()))
        throw std::invalid_argument("imp_l_atom: atom P not in context");
      return {rest.with(p.rhs())};
    }
    case RuleTag::ImpLImp: {
      const Formula& p = principal();
      if (!p.is(K::Imp) || !p.lhs().is(K::Imp))
        throw std::invalid_argument("imp_l_imp: principal not (F->G)->H");
      const Formula& fg = p.lhs();
      Sequent rest = s.without(*app.principal);
      Sequent prem1 = rest.with(Formula::imp(fg.rhs(), p.rhs())).with_goal(fg);
      Sequent prem2 = rest.with(p.rhs());
      return {std::move(prem1), std::move(prem2)};
    }
  }
  throw std::invalid_argument("unknown rule");
}

// All schema matches, invertible rules first, then the fixed tag order, with
// the leftmost principal (in the canonical context order) first.
inline std::vector<RuleApp> applicable_rules(const Sequent& s, const ProverConfig& cfg = {}) {
  using K = Formula::Kind;
  std::vector<RuleApp> out;
  auto each_principal = [&](RuleTag t, auto&& pred) {
    for (size_t i = 0; i < s.context.size(); ++i)
      if (pred(s.context[i])) out.push_back({t, i});
  };
  // invertible
  if (s.goal.is(K::Imp)) out.push_back({RuleTag::ImpR, std::nullopt});
  if (s.goal.is(K::And)) out.push_back({RuleTag::AndR, std::nullopt});
  each_principal(RuleTag::OrL, [](const Formula& f) { return f.is(K::Or); });
  each_principal(RuleTag::AndL, [](const Formula& f) { return f.is(K::And); });
  each_principal(RuleTag::ImpLAnd,
                 [](const Formula& f) { return f.is(K::Imp) && f.lhs().is(K::And); });
  each_principal(RuleTag::ImpLOr,
                 [](const Formula& f) { return f.is(K::Imp) && f.lhs().is(K::Or); });
  // non-invertible
  if (s.goal.is(K::Atom) && detail::context_has(s, s.goal)) out.push_back({RuleTag::Axiom, std::nullopt});
  if (s.goal.is(K::Or)) {
    out.push_back({RuleTag::OrR1, std::nullopt});
    out.push_back({RuleTag::OrR2, std::nullopt});
  }
  each_principal(RuleTag::ImpLAtom, [&](const Formula& f) {
    if (!(f.is(K::Imp) && f.lhs().is(K::Atom))) return false;
    size_t hits = 0;
    for (const auto& g : s.context)
      if (g == f.lhs()) ++hits;
    return hits > 0;
  });
  each_principal(RuleTag::ImpLImp,
                 [](const Formula& f) { return f.is(K::Imp) && f.lhs().is(K::Imp); });
  if (cfg.ex_falso)
    each_principal(RuleTag::FalsumL, [&](const Formula& f) { return detail::is_falsum(f, cfg); });
  return out;
}

namespace detail {

struct Search {
  const ProverConfig& cfg;
  unsigned long nodes = 0;

  std::optional<Derivation> run(const Sequent& s) {
    if (cfg.max_nodes && ++nodes > cfg.max_nodes) throw SearchLimitExceeded();
    // saturate invertible rules first (they preserve provability in both
    // directions, so no backtracking over them is needed), then branch over
    // the non-invertible alternatives
    auto apps = applicable_rules(s, cfg);
    for (const auto& app : apps) {
      if (!invertible(app.rule)) continue;
      return expand(s, app);
    }
    for (const auto& app : apps) {
      if (invertible(app.rule)) continue;
      if (auto d = expand(s, app)) return d;
    }
    return std::nullopt;
  }

  std::optional<Derivation> expand(const Sequent& s, const RuleApp& app) {
    std::vector<Derivation> subs;
    for (const auto& prem : rule_premises(s, app, cfg)) {
      auto d = run(prem);
      if (!d) return std::nullopt;
      subs.push_back(std::move(*d));
    }
    return Derivation{app.rule, s, app.principal, std::move(subs)};
  }
};

// Residual tops (whole goal or inside disjuncts) are replaced by a unit
// implication t -> t over a fresh atom, as the calculus has no top rules.
inline Sequent desugar_top(const Sequent& s) {
  Sequent t = simplify_top(s);
  bool any = contains_top(t.goal);
  for (const auto& f : t.context) any = any || contains_top(f);
  if (!any) return t;
  std::set<std::string> names = atom_names(t.goal);
  for (const auto& f : t.context) {
    auto n = atom_names(f);
    names.insert(n.begin(), n.end());
  }
  FreshNames fresh(names);
  Formula unit_atom = Formula::atom(fresh.fresh("t"));
  Formula unit = Formula::imp(unit_atom, unit_atom);
  std::vector<Formula> ctx;
  for (const auto& f : t.context) ctx.push_back(replace_top(f, unit));
  return Sequent(std::move(ctx), replace_top(t.goal, unit));
}

}  // namespace detail

// Decision procedure. Top is simplified away first (residual occurrences are
// replaced by a fresh unit implication); the returned derivation concludes
// that preprocessed sequent. Quantified sequents are rejected.
inline std::optional<Derivation> prove(const Sequent& s, const ProverConfig& cfg = {}) {
  if (contains_quantifier(sequent_formula(s)))
    throw std::invalid_argument("prove: first-order sequents are not supported");
  detail::Search search{cfg};
  return search.run(detail::desugar_top(s));
}

inline std::optional<Derivation> prove(const Formula& goal, const ProverConfig& cfg = {}) {
  return prove(Sequent({}, goal), cfg);
}

// --- checker ------------------------------------------------------------------

struct CheckResult {
  bool ok = true;
  std::vector<size_t> path;  // premise indices from the root to the offending node
  std::string message;

  explicit operator bool() const { return ok; }
};

namespace detail {
inline bool check_rec(const Derivation& d, const ProverConfig& cfg, CheckResult& res) {
  std::vector<Sequent> expect;
  try {
    expect = rule_premises(d.conclusion, {d.rule, d.principal}, cfg);
  } catch (const std::invalid_argument& e) {
    res.ok = false;
    res.message = e.what();
    return false;
  }
  if (expect.size() != d.premises.size()) {
    res.ok = false;
    res.message = "premise count mismatch";
    return false;
  }
  for (size_t i = 0; i < expect.size(); ++i) {
    if (d.premises[i].conclusion != expect[i]) {
      res.ok = false;
      res.path.push_back(i);
      res.message = "premise sequent differs from rule schema";
      return false;
    }
    size_t mark = res.path.size();
    res.path.push_back(i);
    if (!check_rec(d.premises[i], cfg, res)) return false;
    res.path.resize(mark);
  }
  return true;
}
}  // namespace detail

// Node-local validation: every node must instantiate its rule schema, with
// premises matching up to multiset equality of contexts (contexts are kept
// canonically sorted, so this is plain equality).
inline CheckResult check(const Derivation& d, const ProverConfig& cfg = {}) {
  CheckResult res;
  detail::check_rec(d, cfg, res);
  if (res.ok) res.path.clear();
  return res;
}

// --- independent oracle ----------------------------------------------------------

struct OracleConfig {
  bool ex_falso = false;
  std::string falsum_name = "bot";
  unsigned long max_states = 5'000'000;
};

struct OracleLimitExceeded : std::runtime_error {
  OracleLimitExceeded() : std::runtime_error("oracle state budget exceeded") {}
};

namespace detail {

// Set-based LJ search with per-branch loop checking: the left implication
// rule keeps its principal formula, so histories are needed for termination.
class Oracle {
 public:
  explicit Oracle(const OracleConfig& cfg) : cfg_(cfg) {}

  bool decide(std::vector<Formula> ctx, Formula goal) {
    canon(ctx);
    std::vector<std::pair<std::vector<Formula>, Formula>> history;
    return rec(std::move(ctx), std::move(goal), history);
  }

 private:
  const OracleConfig& cfg_;
  unsigned long states_ = 0;

  static void canon(std::vector<Formula>& ctx) {
    std::sort(ctx.begin(), ctx.end(), formula_less);
    ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
  }
  static std::vector<Formula> with(std::vector<Formula> ctx, const Formula& f) {
    ctx.push_back(f);
    canon(ctx);
    return ctx;
  }
  static std::vector<Formula> without(std::vector<Formula> ctx, size_t i) {
    ctx.erase(ctx.begin() + static_cast<long>(i));
    return ctx;
  }

  bool rec(std::vector<Formula> ctx, Formula goal,
           std::vector<std::pair<std::vector<Formula>, Formula>>& history) {
    using K = Formula::Kind;
    if (++states_ > cfg_.max_states) throw OracleLimitExceeded();

    if (goal.is(K::Top)) return true;
    for (const auto& f : ctx) {
      if (f == goal) return true;
      if (cfg_.ex_falso && f.is(K::Atom) && f.args().empty() && f.name() == cfg_.falsum_name)
        return true;
    }
    for (const auto& h : history)
      if (h.second == goal && h.first == ctx) return false;  // loop
    history.emplace_back(ctx, goal);
    struct Pop {
      std::vector<std::pair<std::vector<Formula>, Formula>>& h;
      ~Pop() { h.pop_back(); }
    } pop{history};

    // invertible decompositions
    for (size_t i = 0; i < ctx.size(); ++i) {
      const Formula& f = ctx[i];
      if (f.is(K::Top)) return rec(without(ctx, i), goal, history);
      if (f.is(K::And))
        return rec(with(with(without(ctx, i), f.lhs()), f.rhs()), goal, history);
      if (f.is(K::Or))
        return rec(with(without(ctx, i), f.lhs()), goal, history) &&
               rec(with(without(ctx, i), f.rhs()), goal, history);
    }
    if (goal.is(K::And))
      return rec(ctx, goal.lhs(), history) && rec(ctx, goal.rhs(), history);
    if (goal.is(K::Imp)) return rec(with(ctx, goal.lhs()), goal.rhs(), history);

    // choice points
    if (goal.is(K::Or)) {
      if (rec(ctx, goal.lhs(), history)) return true;
      if (rec(ctx, goal.rhs(), history)) return true;
    }
    for (size_t i = 0; i < ctx.size(); ++i) {
      const Formula& f = ctx[i];
      if (!f.is(K::Imp)) continue;
      // premise 1 keeps the principal formula
      if (rec(ctx, f.lhs(), history) && rec(with(without(ctx, i), f.rhs()), goal, history))
        return true;
    }
    return false;
  }
};

}  // namespace detail

// Decides provability by exhaustive loop-checking search; independent of the
// G4ip prover's code path and rule set.
inline bool oracle_decide(const Sequent& s, const OracleConfig& cfg = {}) {
  if (contains_quantifier(sequent_formula(s)))
    throw std::invalid_argument("oracle_decide: first-order sequents are not supported");
  detail::Oracle o(cfg);
  Sequent t = simplify_top(s);
  return o.decide(t.context, t.goal);
}

inline bool oracle_decide(const Formula& goal, const OracleConfig& cfg = {}) {
  return oracle_decide(Sequent({}, goal), cfg);
}

// --- schema instances for the measure grids ---------------------------------------

struct RuleInstance {
  std::vector<Sequent> premises;
  Sequent conclusion;
};

// Builds the schema instance of a rule over the given component formulas.
// Gamma is shared by conclusion and premises.
inline RuleInstance rule_schema_instance(RuleTag tag, const Formula& F, const Formula& G,
                                         const Formula& H, const Formula& I, const Formula& P,
                                         const std::vector<Formula>& gamma) {
  auto seq = [&](std::vector<Formula> extra, const Formula& goal) {
    for (const auto& g : gamma) extra.push_back(g);
    return Sequent(std::move(extra), goal);
  };
  switch (tag) {
    case RuleTag::Axiom: return {{}, seq({P}, P)};
    case RuleTag::OrR1: return {{seq({}, F)}, seq({}, Formula::disj(F, G))};
    case RuleTag::OrR2: return {{seq({}, G)}, seq({}, Formula::disj(F, G))};
    case RuleTag::ImpLAtom:
      return {{seq({F, P}, G)}, seq({Formula::imp(P, F), P}, G)};
    case RuleTag::ImpLImp: {
      Formula fg = Formula::imp(F, G);
      return {{seq({Formula::imp(G, H)}, fg), seq({H}, I)},
              seq({Formula::imp(fg, H)}, I)};
    }
    case RuleTag::ImpR: return {{seq({F}, G)}, seq({}, Formula::imp(F, G))};
    case RuleTag::AndR: return {{seq({}, F), seq({}, G)}, seq({}, Formula::conj(F, G))};
    case RuleTag::OrL:
      return {{seq({F}, H), seq({G}, H)}, seq({Formula::disj(F, G)}, H)};
    case RuleTag::AndL: return {{seq({F, G}, H)}, seq({Formula::conj(F, G)}, H)};
    case RuleTag::ImpLAnd:
      return {{seq({Formula::imp(F, Formula::imp(G, H))}, I)},
              seq({Formula::imp(Formula::conj(G, F), H)}, I)};
    case RuleTag::ImpLOr:
      return {{seq({Formula::imp(F, H), Formula::imp(G, H)}, I)},
              seq({Formula::imp(Formula::disj(F, G), H)}, I)};
    case RuleTag::FalsumL: throw std::invalid_argument("falsum_l has no interpretation schema");
  }
  throw std::invalid_argument("unknown rule");
}

struct GridSummary {
  std::string rule;
  unsigned long checked = 0;
  unsigned long equal = 0;
  unsigned long strictly_less = 0;
  std::vector<AuditReport> violations;
  bool ok() const { return violations.empty(); }
};

// Sweeps a rule schema over atom values and context values. F,G,H,I,P range
// over `values`; the context value ranges over 1..gamma_max (1 = empty).
inline GridSummary audit_rule_grid(RuleTag tag, const std::vector<unsigned long>& values,
                                   unsigned long gamma_max = 8, const EvalOptions& opt = {}) {
  GridSummary sum;
  sum.rule = to_string(tag);
  Formula F = Formula::atom("f"), G = Formula::atom("g"), H = Formula::atom("h"),
          I = Formula::atom("i"), P = Formula::atom("p");
  bool needs[5] = {false, false, false, false, false};
  switch (tag) {
    case RuleTag::Axiom: needs[4] = true; break;
    case RuleTag::OrR1:
    case RuleTag::OrR2:
    case RuleTag::ImpR: needs[0] = needs[1] = true; break;
    case RuleTag::AndR: needs[0] = needs[1] = true; break;
    case RuleTag::ImpLAtom: needs[0] = needs[1] = needs[4] = true; break;
    case RuleTag::OrL:
    case RuleTag::AndL: needs[0] = needs[1] = needs[2] = true; break;
    case RuleTag::ImpLImp:
    case RuleTag::ImpLAnd:
    case RuleTag::ImpLOr: needs[0] = needs[1] = needs[2] = needs[3] = true; break;
    case RuleTag::FalsumL: throw std::invalid_argument("falsum_l has no interpretation schema");
  }
  std::vector<std::vector<unsigned long>> grids;
  for (bool n : needs) grids.push_back(n ? values : std::vector<unsigned long>{2});

  for (unsigned long vf : grids[0])
    for (unsigned long vg : grids[1])
      for (unsigned long vh : grids[2])
        for (unsigned long vi : grids[3])
          for (unsigned long vp : grids[4])
            for (unsigned long gam = 1; gam <= gamma_max; ++gam) {
              Valuation v;
              v.set("f", vf).set("g", vg).set("h", vh).set("i", vi).set("p", vp);
              std::vector<Formula> gamma;
              if (gam >= 2) {
                v.set("gam", gam);
                gamma.push_back(Formula::atom("gam"));
              }
              RuleInstance inst = rule_schema_instance(tag, F, G, H, I, P, gamma);
              AuditReport rep = audit_rule_instance(to_string(tag), invertible(tag),
                                                    inst.premises, inst.conclusion, v, opt);
              ++sum.checked;
              if (rep.verdict == AuditVerdict::Equal) ++sum.equal;
              else if (rep.verdict == AuditVerdict::StrictlyLess) ++sum.strictly_less;
              else sum.violations.push_back(rep);
            }
  return sum;
}

// Audits every node of a derivation against the measure theorem.
inline void audit_derivation(const Derivation& d, const Valuation& v,
                             std::vector<AuditReport>& out, const EvalOptions& opt = {}) {
  std::vector<Sequent> prem;
  prem.reserve(d.premises.size());
  for (const auto& p : d.premises) prem.push_back(p.conclusion);
  out.push_back(
      audit_rule_instance(to_string(d.rule), invertible(d.rule), prem, d.conclusion, v, opt));
  for (const auto& p : d.premises) audit_derivation(p, v, out, opt);
}

}  // namespace explog
