#pragma once

// Exp-log normal forms. The classes are mutually inductive:
//
//   B ::= p | d | x c            bases: prime, sum, existential block
//   C ::= 1 | (b^c1)^x1 c2       conjunctions: products of exponentials
//   D ::= c1 + c2 | c + d        sums of at least two conjunctions
//   E ::= c | d
//
// Products and sums are kept as flat vectors, which realizes the
// right-association discipline of the flattening operators: concatenation
// is the only way lists combine, so units and associativity are
// definitional. Propositional values carry empty quantifier prefixes and
// no existential bases.

#include <algorithm>
#include <cassert>
#include <string>
#include <variant>
#include <vector>

#include "explog/formula.hpp"

namespace explog {

// Ordered quantifier prefix, innermost binder first. A factor (b^c)^{y,x}
// reads as the formula forall x (forall y (c -> b)).
using Vars = std::vector<std::string>;

struct Prime {
  std::string name;
  std::vector<Term> args;

  bool operator==(const Prime& o) const { return name == o.name && args == o.args; }
};

struct Factor;

// C: possibly empty product of factors; the empty product is the unit 1.
struct Conj {
  std::vector<Factor> factors;

  Conj() = default;
  explicit Conj(std::vector<Factor> fs) : factors(std::move(fs)) {}

  bool is_unit() const { return factors.empty(); }
  size_t size() const { return factors.size(); }
  bool operator==(const Conj& o) const;
};

// D: sum with at least two summands.
struct Sum {
  std::vector<Conj> summands;

  Sum() = default;
  explicit Sum(std::vector<Conj> ss) : summands(std::move(ss)) { assert(summands.size() >= 2); }

  size_t size() const { return summands.size(); }
  bool operator==(const Sum& o) const { return summands == o.summands; }
};

// Existential block x c with a nonempty variable list.
struct Ex {
  Vars vars;
  Conj body;

  bool operator==(const Ex& o) const;
};

struct Base {
  std::variant<Prime, Sum, Ex> node;

  Base() : node(Prime{}) {}
  Base(Prime p) : node(std::move(p)) {}
  Base(Sum d) : node(std::move(d)) {}
  Base(Ex x) : node(std::move(x)) {}

  bool is_prime() const { return std::holds_alternative<Prime>(node); }
  bool is_sum() const { return std::holds_alternative<Sum>(node); }
  bool is_ex() const { return std::holds_alternative<Ex>(node); }
  const Prime& prime() const { return std::get<Prime>(node); }
  const Sum& sum() const { return std::get<Sum>(node); }
  const Ex& ex() const { return std::get<Ex>(node); }

  bool operator==(const Base& o) const;
};

// One factor (b^c)^x of a conjunction.
struct Factor {
  Vars vars;  // innermost first
  Base base;
  Conj exp;

  bool operator==(const Factor& o) const {
    return vars == o.vars && base == o.base && exp == o.exp;
  }
};

inline bool Conj::operator==(const Conj& o) const { return factors == o.factors; }
inline bool Ex::operator==(const Ex& o) const { return vars == o.vars && body == o.body; }
inline bool Base::operator==(const Base& o) const { return node == o.node; }

// E: a conjunction or a sum.
using NF = std::variant<Conj, Sum>;

inline bool is_conj(const NF& e) { return std::holds_alternative<Conj>(e); }
inline bool is_sum(const NF& e) { return std::holds_alternative<Sum>(e); }
inline const Conj& as_conj(const NF& e) { return std::get<Conj>(e); }
inline const Sum& as_sum(const NF& e) { return std::get<Sum>(e); }

inline size_t summand_count(const NF& e) { return is_conj(e) ? 1 : as_sum(e).size(); }

inline std::vector<Conj> to_summands(const NF& e) {
  if (is_conj(e)) return {as_conj(e)};
  return as_sum(e).summands;
}

// Rebuilds an E value from a summand list (one summand is a C, two or more a D).
inline NF nf_from_summands(std::vector<Conj> ss) {
  assert(!ss.empty());
  if (ss.size() == 1) return NF(std::move(ss[0]));
  return NF(Sum(std::move(ss)));
}

// --- convenience constructors --------------------------------------------

inline Factor factor(Base b, Conj exp = {}, Vars vars = {}) {
  return Factor{std::move(vars), std::move(b), std::move(exp)};
}
inline Conj conj_of(std::vector<Factor> fs) { return Conj(std::move(fs)); }
inline Conj unit_conj() { return Conj{}; }
// p^1 1, the normal form of an atom
inline Conj prime_conj(std::string name, std::vector<Term> args = {}) {
  return Conj({factor(Base(Prime{std::move(name), std::move(args)}))});
}

// --- total order ----------------------------------------------------------

int compare(const Factor& a, const Factor& b);

inline int compare(const Conj& a, const Conj& b) {
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  for (size_t i = 0; i < a.factors.size(); ++i)
    if (int c = compare(a.factors[i], b.factors[i])) return c;
  return 0;
}

inline int compare(const Sum& a, const Sum& b) {
  if (a.summands.size() != b.summands.size()) return a.summands.size() < b.summands.size() ? -1 : 1;
  for (size_t i = 0; i < a.summands.size(); ++i)
    if (int c = compare(a.summands[i], b.summands[i])) return c;
  return 0;
}

inline int compare(const Base& a, const Base& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  if (a.is_prime()) {
    if (int c = a.prime().name.compare(b.prime().name)) return c < 0 ? -1 : 1;
    const auto& aa = a.prime().args;
    const auto& ba = b.prime().args;
    if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
    for (size_t i = 0; i < aa.size(); ++i)
      if (int c = compare(aa[i], ba[i])) return c;
    return 0;
  }
  if (a.is_sum()) return compare(a.sum(), b.sum());
  if (a.ex().vars != b.ex().vars) return a.ex().vars < b.ex().vars ? -1 : 1;
  return compare(a.ex().body, b.ex().body);
}

inline int compare(const Factor& a, const Factor& b) {
  if (int c = compare(a.base, b.base)) return c;
  if (int c = compare(a.exp, b.exp)) return c;
  if (a.vars != b.vars) return a.vars < b.vars ? -1 : 1;
  return 0;
}

inline int compare(const NF& a, const NF& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (is_conj(a)) return compare(as_conj(a), as_conj(b));
  return compare(as_sum(a), as_sum(b));
}

// --- canonicalization (equality modulo commutativity) ----------------------

Conj canonicalize(const Conj& c);

inline Sum canonicalize(const Sum& d) {
  std::vector<Conj> ss;
  ss.reserve(d.summands.size());
  for (const auto& s : d.summands) ss.push_back(canonicalize(s));
  std::sort(ss.begin(), ss.end(), [](const Conj& x, const Conj& y) { return compare(x, y) < 0; });
  return Sum(std::move(ss));
}

inline Base canonicalize(const Base& b) {
  if (b.is_prime()) return b;
  if (b.is_sum()) return Base(canonicalize(b.sum()));
  return Base(Ex{b.ex().vars, canonicalize(b.ex().body)});
}

inline Conj canonicalize(const Conj& c) {
  std::vector<Factor> fs;
  fs.reserve(c.factors.size());
  for (const auto& f : c.factors)
    fs.push_back(Factor{f.vars, canonicalize(f.base), canonicalize(f.exp)});
  std::sort(fs.begin(), fs.end(),
            [](const Factor& x, const Factor& y) { return compare(x, y) < 0; });
  return Conj(std::move(fs));
}

inline NF canonicalize(const NF& e) {
  if (is_conj(e)) return NF(canonicalize(as_conj(e)));
  return NF(canonicalize(as_sum(e)));
}

// Structural equality, or equality after sorting products and sums when
// mod_comm is set.
inline bool nf_equal(const NF& a, const NF& b, bool mod_comm = false) {
  if (!mod_comm) return a == b;
  return canonicalize(a) == canonicalize(b);
}
inline bool nf_equal(const Conj& a, const Conj& b, bool mod_comm = false) {
  if (!mod_comm) return a == b;
  return canonicalize(a) == canonicalize(b);
}

// --- embedding back into formulas ------------------------------------------

// Reads a normal form as a formula: sums become right-nested disjunctions,
// a factor (b^c)^{y,x} becomes forall x (forall y (c -> b)) with the unit
// exponent embedded as top, and 1 becomes top. No simplification is applied;
// compose with simplify_top to drop the trivial units.
Formula embed(const NF& e);

inline Formula embed(const Conj& c);

inline Formula embed(const Base& b) {
  if (b.is_prime()) return Formula::atom(b.prime().name, b.prime().args);
  if (b.is_sum()) return embed(NF(b.sum()));
  Formula f = embed(b.ex().body);
  for (const auto& v : b.ex().vars) f = Formula::exists(v, f);
  return f;
}

inline Formula embed(const Factor& f) {
  Formula out = Formula::imp(embed(f.exp), embed(f.base));
  for (const auto& v : f.vars) out = Formula::forall(v, out);
  return out;
}

inline Formula embed(const Conj& c) {
  if (c.is_unit()) return Formula::top();
  Formula out = embed(c.factors.back());
  for (size_t i = c.factors.size() - 1; i-- > 0;) out = Formula::conj(embed(c.factors[i]), out);
  return out;
}

inline Formula embed(const NF& e) {
  if (is_conj(e)) return embed(as_conj(e));
  const auto& ss = as_sum(e).summands;
  Formula out = embed(ss.back());
  for (size_t i = ss.size() - 1; i-- > 0;) out = Formula::disj(embed(ss[i]), out);
  return out;
}

// --- classification ---------------------------------------------------------

// Class tree of a normal form. The hierarchy has no linear level order; the
// report gives the mutually recursive structure and alternation depths.
struct ClassNode {
  enum class Tag { Pi, Sigma, PrimeLeaf, ExBlock };
  Tag tag;
  size_t width = 0;                 // factors of a Pi, summands of a Sigma
  std::vector<ClassNode> children;  // Sigma: summand Pis; Pi: per-factor base then exponent
  int alternation = 0;              // depth of Sigma/Pi alternation below
};

struct ClassReport {
  bool top_is_sigma = false;
  ClassNode tree;
  std::vector<int> depth_vector;  // alternation depth per top-level component
};

namespace detail {
ClassNode classify_conj(const Conj& c);

inline ClassNode classify_base(const Base& b) {
  if (b.is_prime()) return ClassNode{ClassNode::Tag::PrimeLeaf, 0, {}, 0};
  if (b.is_sum()) {
    ClassNode n{ClassNode::Tag::Sigma, b.sum().size(), {}, 0};
    int alt = 0;
    for (const auto& s : b.sum().summands) {
      n.children.push_back(classify_conj(s));
      alt = std::max(alt, n.children.back().alternation);
    }
    n.alternation = alt + 1;
    return n;
  }
  ClassNode body = classify_conj(b.ex().body);
  ClassNode n{ClassNode::Tag::ExBlock, b.ex().vars.size(), {std::move(body)}, 0};
  n.alternation = n.children[0].alternation;
  return n;
}

inline ClassNode classify_conj(const Conj& c) {
  ClassNode n{ClassNode::Tag::Pi, c.size(), {}, 0};
  for (const auto& f : c.factors) {
    n.children.push_back(classify_base(f.base));
    n.children.push_back(classify_conj(f.exp));
    n.alternation = std::max(
        n.alternation,
        std::max(n.children[n.children.size() - 2].alternation, n.children.back().alternation));
  }
  return n;
}
}  // namespace detail

inline ClassReport classify(const NF& e) {
  ClassReport r;
  if (is_sum(e)) {
    r.top_is_sigma = true;
    ClassNode n{ClassNode::Tag::Sigma, as_sum(e).size(), {}, 0};
    for (const auto& s : as_sum(e).summands) {
      n.children.push_back(detail::classify_conj(s));
      r.depth_vector.push_back(n.children.back().alternation);
      n.alternation = std::max(n.alternation, n.children.back().alternation + 1);
    }
    r.tree = std::move(n);
  } else {
    r.top_is_sigma = false;
    r.tree = detail::classify_conj(as_conj(e));
    for (const auto& ch : r.tree.children) r.depth_vector.push_back(ch.alternation);
  }
  return r;
}

// --- polynomial notation ----------------------------------------------------

std::string print_polynomial(const Conj& c, bool verbose_units = false);

namespace detail {
inline std::string poly_base(const Base& b, bool verbose) {
  if (b.is_prime()) {
    std::string s = b.prime().name;
    if (!b.prime().args.empty()) {
      s += '(';
      for (size_t i = 0; i < b.prime().args.size(); ++i) {
        if (i) s += ',';
        s += print_term(b.prime().args[i]);
      }
      s += ')';
    }
    return s;
  }
  if (b.is_sum()) {
    std::string s = "(";
    const auto& ss = b.sum().summands;
    for (size_t i = 0; i < ss.size(); ++i) {
      if (i) s += " + ";
      s += print_polynomial(ss[i], verbose);
    }
    return s + ")";
  }
  std::string s = "(";
  for (auto it = b.ex().vars.rbegin(); it != b.ex().vars.rend(); ++it) s += *it + " ";
  return s + print_polynomial(b.ex().body, verbose) + ")";
}

inline std::string poly_factor(const Factor& f, bool verbose) {
  std::string base = poly_base(f.base, verbose);
  std::string s;
  bool trivial_exp = f.exp.is_unit();
  if (trivial_exp && !verbose) {
    s = base;
  } else {
    std::string e = print_polynomial(f.exp, verbose);
    bool brace = e.size() > 1 || f.exp.size() > 1;
    s = base + "^" + (brace ? "{" + e + "}" : e);
  }
  if (!f.vars.empty()) {
    std::string vs;
    for (size_t i = 0; i < f.vars.size(); ++i) {
      if (i) vs += ",";
      vs += f.vars[i];
    }
    s = "(" + s + ")^" + (f.vars.size() > 1 ? "{" + vs + "}" : vs);
  }
  return s;
}
}  // namespace detail

inline std::string print_polynomial(const Conj& c, bool verbose_units) {
  if (c.is_unit()) return "1";
  std::string s;
  for (size_t i = 0; i < c.factors.size(); ++i) {
    if (i) s += " ";
    s += detail::poly_factor(c.factors[i], verbose_units);
  }
  if (verbose_units) s += " 1";
  return s;
}

inline std::string print_polynomial(const NF& e, bool verbose_units = false) {
  if (is_conj(e)) return print_polynomial(as_conj(e), verbose_units);
  std::string s;
  const auto& ss = as_sum(e).summands;
  for (size_t i = 0; i < ss.size(); ++i) {
    if (i) s += " + ";
    s += print_polynomial(ss[i], verbose_units);
  }
  return s;
}

}  // namespace explog
