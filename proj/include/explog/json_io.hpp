#pragma once

// JSON (de)serialization for formulas, sequents, normal forms and proofs.
// Key order is fixed so that identical inputs produce identical bytes.

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "explog/formula.hpp"
#include "explog/g4ip.hpp"
#include "explog/hs.hpp"
#include "explog/interp.hpp"
#include "explog/normal_form.hpp"

namespace explog {

using json = nlohmann::ordered_json;

// --- terms and formulas -------------------------------------------------------

inline json to_json(const Term& t) {
  if (!t.is_fn) return json{{"var", t.name}};
  json args = json::array();
  for (const auto& a : t.args) args.push_back(to_json(a));
  return json{{"fn", t.name}, {"args", std::move(args)}};
}

inline Term term_from_json(const json& j) {
  if (j.contains("var")) return Term::var(j.at("var").get<std::string>());
  if (!j.contains("fn")) throw std::runtime_error("term: expected var or fn");
  std::vector<Term> args;
  for (const auto& a : j.at("args")) args.push_back(term_from_json(a));
  return Term::fn(j.at("fn").get<std::string>(), std::move(args));
}

inline json to_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return json{{"op", "top"}};
    case Formula::Kind::Atom: {
      json j{{"op", "atom"}, {"name", f.name()}};
      if (!f.args().empty()) {
        json args = json::array();
        for (const auto& t : f.args()) args.push_back(to_json(t));
        j["args"] = std::move(args);
      }
      return j;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      const char* op = f.kind() == Formula::Kind::And ? "and"
                       : f.kind() == Formula::Kind::Or ? "or"
                                                       : "imp";
      return json{{"op", op}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return json{{"op", f.kind() == Formula::Kind::Forall ? "forall" : "exists"},
                  {"var", f.var()},
                  {"body", to_json(f.body())}};
  }
  throw std::logic_error("to_json: bad formula");
}

inline Formula formula_from_json(const json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "top") return Formula::top();
  if (op == "atom") {
    std::vector<Term> args;
    if (j.contains("args"))
      for (const auto& a : j.at("args")) args.push_back(term_from_json(a));
    return Formula::atom(j.at("name").get<std::string>(), std::move(args));
  }
  if (op == "and") return Formula::conj(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  if (op == "or") return Formula::disj(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  if (op == "imp") return Formula::imp(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
  if (op == "forall")
    return Formula::forall(j.at("var").get<std::string>(), formula_from_json(j.at("body")));
  if (op == "exists")
    return Formula::exists(j.at("var").get<std::string>(), formula_from_json(j.at("body")));
  throw std::runtime_error("formula: unknown op '" + op + "'");
}

inline json to_json(const Sequent& s) {
  json ctx = json::array();
  for (const auto& f : s.context) ctx.push_back(to_json(f));
  return json{{"context", std::move(ctx)}, {"goal", to_json(s.goal)}};
}

inline Sequent sequent_from_json(const json& j) {
  std::vector<Formula> ctx;
  for (const auto& f : j.at("context")) ctx.push_back(formula_from_json(f));
  return Sequent(std::move(ctx), formula_from_json(j.at("goal")));
}

// --- normal forms -----------------------------------------------------------------

inline json to_json(const Conj& c);

inline json to_json(const Base& b) {
  if (b.is_prime()) {
    json j{{"class", "prime"}, {"name", b.prime().name}};
    if (!b.prime().args.empty()) {
      json args = json::array();
      for (const auto& t : b.prime().args) args.push_back(to_json(t));
      j["args"] = std::move(args);
    }
    return j;
  }
  if (b.is_sum()) {
    json ss = json::array();
    for (const auto& s : b.sum().summands) ss.push_back(to_json(s));
    return json{{"class", "sum"}, {"summands", std::move(ss)}};
  }
  return json{{"class", "ex"}, {"vars", b.ex().vars}, {"body", to_json(b.ex().body)}};
}

inline json to_json(const Factor& f) {
  json j = json::object();
  if (!f.vars.empty()) j["vars"] = f.vars;
  j["base"] = to_json(f.base);
  j["exp"] = to_json(f.exp);
  return j;
}

inline json to_json(const Conj& c) {
  json fs = json::array();
  for (const auto& f : c.factors) fs.push_back(to_json(f));
  return json{{"class", "conj"}, {"factors", std::move(fs)}};
}

inline json to_json(const NF& e) {
  if (is_conj(e)) return to_json(as_conj(e));
  json ss = json::array();
  for (const auto& s : as_sum(e).summands) ss.push_back(to_json(s));
  return json{{"class", "sum"}, {"summands", std::move(ss)}};
}

inline Conj conj_from_json(const json& j);

inline Base base_from_json(const json& j) {
  const std::string cls = j.at("class").get<std::string>();
  if (cls == "prime") {
    std::vector<Term> args;
    if (j.contains("args"))
      for (const auto& a : j.at("args")) args.push_back(term_from_json(a));
    return Base(Prime{j.at("name").get<std::string>(), std::move(args)});
  }
  if (cls == "sum") {
    std::vector<Conj> ss;
    for (const auto& s : j.at("summands")) ss.push_back(conj_from_json(s));
    return Base(Sum(std::move(ss)));
  }
  if (cls == "ex")
    return Base(Ex{j.at("vars").get<Vars>(), conj_from_json(j.at("body"))});
  throw std::runtime_error("base: unknown class '" + cls + "'");
}

inline Factor factor_from_json(const json& j) {
  Factor f;
  if (j.contains("vars")) f.vars = j.at("vars").get<Vars>();
  f.base = base_from_json(j.at("base"));
  f.exp = conj_from_json(j.at("exp"));
  return f;
}

inline Conj conj_from_json(const json& j) {
  if (j.at("class").get<std::string>() != "conj") throw std::runtime_error("expected conj");
  std::vector<Factor> fs;
  for (const auto& f : j.at("factors")) fs.push_back(factor_from_json(f));
  return Conj(std::move(fs));
}

inline NF nf_from_json(const json& j) {
  const std::string cls = j.at("class").get<std::string>();
  if (cls == "conj") return NF(conj_from_json(j));
  if (cls == "sum") {
    std::vector<Conj> ss;
    for (const auto& s : j.at("summands")) ss.push_back(conj_from_json(s));
    return NF(Sum(std::move(ss)));
  }
  throw std::runtime_error("normal form: unknown class '" + cls + "'");
}

// --- derivations --------------------------------------------------------------------

inline json to_json(const Derivation& d) {
  json prem = json::array();
  for (const auto& p : d.premises) prem.push_back(to_json(p));
  json j{{"rule", to_string(d.rule)}, {"sequent", to_json(d.conclusion)}};
  j["principal"] = d.principal ? json(*d.principal) : json(nullptr);
  j["premises"] = std::move(prem);
  return j;
}

inline Derivation derivation_from_json(const json& j) {
  Derivation d;
  auto rule = rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw std::runtime_error("derivation: unknown rule");
  d.rule = *rule;
  d.conclusion = sequent_from_json(j.at("sequent"));
  if (j.contains("principal") && !j.at("principal").is_null())
    d.principal = j.at("principal").get<size_t>();
  for (const auto& p : j.at("premises")) d.premises.push_back(derivation_from_json(p));
  return d;
}

inline json to_json(const HsInst& i) {
  json j = json::object();
  if (i.p) {
    json p{{"name", i.p->name}};
    if (!i.p->args.empty()) {
      json args = json::array();
      for (const auto& t : i.p->args) args.push_back(to_json(t));
      p["args"] = std::move(args);
    }
    j["p"] = std::move(p);
  }
  if (i.c) j["c"] = to_json(*i.c);
  if (i.c0) j["c0"] = to_json(*i.c0);
  if (i.c1) j["c1"] = to_json(*i.c1);
  if (i.c2) j["c2"] = to_json(*i.c2);
  if (i.e) j["e"] = to_json(*i.e);
  if (i.e1) j["e1"] = to_json(*i.e1);
  if (i.e2) j["e2"] = to_json(*i.e2);
  return j;
}

inline HsInst hs_inst_from_json(const json& j) {
  HsInst i;
  if (j.contains("p")) {
    std::vector<Term> args;
    if (j.at("p").contains("args"))
      for (const auto& a : j.at("p").at("args")) args.push_back(term_from_json(a));
    i.p = Prime{j.at("p").at("name").get<std::string>(), std::move(args)};
  }
  if (j.contains("c")) i.c = conj_from_json(j.at("c"));
  if (j.contains("c0")) i.c0 = conj_from_json(j.at("c0"));
  if (j.contains("c1")) i.c1 = conj_from_json(j.at("c1"));
  if (j.contains("c2")) i.c2 = conj_from_json(j.at("c2"));
  if (j.contains("e")) i.e = nf_from_json(j.at("e"));
  if (j.contains("e1")) i.e1 = nf_from_json(j.at("e1"));
  if (j.contains("e2")) i.e2 = nf_from_json(j.at("e2"));
  return i;
}

inline json to_json(const HsDerivation& t) {
  json prem = json::array();
  for (const auto& p : t.premises) prem.push_back(to_json(p));
  return json{{"rule", to_string(t.rule)},
              {"conclusion", to_json(t.conclusion)},
              {"instantiation", to_json(t.inst)},
              {"premises", std::move(prem)}};
}

inline HsDerivation hs_derivation_from_json(const json& j) {
  HsDerivation t;
  auto rule = hs_rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw std::runtime_error("hs derivation: unknown rule");
  t.rule = *rule;
  t.conclusion = conj_from_json(j.at("conclusion"));
  t.inst = hs_inst_from_json(j.at("instantiation"));
  for (const auto& p : j.at("premises")) t.premises.push_back(hs_derivation_from_json(p));
  return t;
}

inline json to_json(const HsProof& p) {
  json trees = json::array();
  for (const auto& t : p.trees) trees.push_back(to_json(t));
  return json{{"conclusion", to_json(p.conclusion)}, {"trees", std::move(trees)}};
}

inline HsProof hs_proof_from_json(const json& j) {
  HsProof p;
  p.conclusion = conj_from_json(j.at("conclusion"));
  for (const auto& t : j.at("trees")) p.trees.push_back(hs_derivation_from_json(t));
  return p;
}

// --- reports --------------------------------------------------------------------------

inline json to_json(const AuditReport& r) {
  return json{{"rule", r.rule},
              {"invertible", r.invertible},
              {"premise_product", r.premise_product.str()},
              {"conclusion_value", r.conclusion_value.str()},
              {"verdict", to_string(r.verdict)}};
}

inline json to_json(const GridSummary& s) {
  json v = json::array();
  for (const auto& r : s.violations) v.push_back(to_json(r));
  return json{{"rule", s.rule},
              {"checked", s.checked},
              {"equal", s.equal},
              {"strictly_less", s.strictly_less},
              {"violations", std::move(v)}};
}

inline json to_json(const LemmaReport& r) {
  auto cases = [](const std::vector<LemmaCase>& cs) {
    json out = json::array();
    for (const auto& c : cs)
      out.push_back(json{{"lemma", c.lemma}, {"F", c.F}, {"G", c.G}, {"H", c.H}});
    return out;
  };
  return json{{"checked", r.checked},
              {"violations", cases(r.violations)},
              {"skipped_overflow", cases(r.skipped_overflow)}};
}

inline json to_json(const G3ipCounterexample& c) {
  return json{{"a", c.a},
              {"b", c.b},
              {"c", c.c},
              {"gamma", c.gamma},
              {"conclusion_value", c.conclusion_value.str()},
              {"premise_product", c.premise_product.str()},
              {"inequality_holds", c.inequality_holds}};
}

inline json to_json(const ClassNode& n) {
  const char* tag = n.tag == ClassNode::Tag::Pi          ? "pi"
                    : n.tag == ClassNode::Tag::Sigma     ? "sigma"
                    : n.tag == ClassNode::Tag::PrimeLeaf ? "prime"
                                                         : "exists";
  json ch = json::array();
  for (const auto& c : n.children) ch.push_back(to_json(c));
  return json{{"tag", tag}, {"width", n.width}, {"alternation", n.alternation},
              {"children", std::move(ch)}};
}

inline json to_json(const ClassReport& r) {
  return json{{"top", r.top_is_sigma ? "sigma" : "pi"},
              {"depth_vector", r.depth_vector},
              {"tree", to_json(r.tree)}};
}

}  // namespace explog
