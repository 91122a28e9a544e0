#pragma once

// Minimal first-order formulas (atoms, top, and/or/imp, forall/exists) with
// value semantics. There is no primitive negation or falsum: "bot" is an
// ordinary atom. Formulas are immutable and cheap to copy.

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace explog {

// First-order term: a variable or a function application over terms.
struct Term {
  std::string name;
  std::vector<Term> args;
  bool is_fn = false;  // variables have is_fn == false and empty args

  static Term var(std::string n) { return Term{std::move(n), {}, false}; }
  static Term fn(std::string n, std::vector<Term> a) {
    return Term{std::move(n), std::move(a), true};
  }

  bool operator==(const Term& o) const {
    return is_fn == o.is_fn && name == o.name && args == o.args;
  }
};

inline int compare(const Term& a, const Term& b) {
  if (a.is_fn != b.is_fn) return a.is_fn ? 1 : -1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

class Formula {
 public:
  enum class Kind { Atom, Top, And, Or, Imp, Forall, Exists };

  Formula() : Formula(top()) {}

  static Formula atom(std::string name, std::vector<Term> args = {}) {
    return Formula(Node{Kind::Atom, std::move(name), std::move(args), {}});
  }
  static Formula top() { return Formula(Node{Kind::Top, {}, {}, {}}); }
  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
  static Formula forall(std::string v, Formula body) { return quant(Kind::Forall, std::move(v), std::move(body)); }
  static Formula exists(std::string v, Formula body) { return quant(Kind::Exists, std::move(v), std::move(body)); }

  Kind kind() const { return n_->kind; }
  bool is(Kind k) const { return n_->kind == k; }

  const std::string& name() const { assert(is(Kind::Atom)); return n_->name; }
  const std::vector<Term>& args() const { assert(is(Kind::Atom)); return n_->args; }
  const Formula& lhs() const { assert(n_->sub.size() == 2); return n_->sub[0]; }
  const Formula& rhs() const { assert(n_->sub.size() == 2); return n_->sub[1]; }
  const std::string& var() const { assert(is(Kind::Forall) || is(Kind::Exists)); return n_->name; }
  const Formula& body() const { assert(n_->sub.size() == 1); return n_->sub[0]; }

  bool operator==(const Formula& o) const {
    if (n_ == o.n_) return true;
    if (n_->kind != o.n_->kind || n_->name != o.n_->name || n_->args != o.n_->args ||
        n_->sub.size() != o.n_->sub.size())
      return false;
    for (size_t i = 0; i < n_->sub.size(); ++i)
      if (!(n_->sub[i] == o.n_->sub[i])) return false;
    return true;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }

  size_t size() const {  // node count, used as a structural measure
    size_t s = 1;
    for (const auto& f : n_->sub) s += f.size();
    return s;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;          // atom or bound variable
    std::vector<Term> args;    // atom arguments
    std::vector<Formula> sub;  // 2 for binary, 1 for quantifier
  };

  explicit Formula(Node n) : n_(std::make_shared<const Node>(std::move(n))) {}
  static Formula binary(Kind k, Formula a, Formula b) {
    return Formula(Node{k, {}, {}, {std::move(a), std::move(b)}});
  }
  static Formula quant(Kind k, std::string v, Formula body) {
    return Formula(Node{k, std::move(v), {}, {std::move(body)}});
  }

  std::shared_ptr<const Node> n_;
};

inline std::string print_term(const Term& t) {
  std::string s = t.name;
  if (t.is_fn) {
    s += '(';
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) s += ',';
      s += print_term(t.args[i]);
    }
    s += ')';
  }
  return s;
}

// Fixed total order on formulas; contexts are kept sorted under it so that
// multisets have a canonical representation.
inline int compare(const Formula& a, const Formula& b) {
  auto rank = [](Formula::Kind k) {
    switch (k) {
      case Formula::Kind::Top: return 0;
      case Formula::Kind::Atom: return 1;
      case Formula::Kind::And: return 2;
      case Formula::Kind::Or: return 3;
      case Formula::Kind::Imp: return 4;
      case Formula::Kind::Forall: return 5;
      case Formula::Kind::Exists: return 6;
    }
    return 7;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Formula::Kind::Top: return 0;
    case Formula::Kind::Atom: {
      if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
      if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (int c = compare(a.args()[i], b.args()[i])) return c;
      return 0;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      if (int c = compare(a.lhs(), b.lhs())) return c;
      return compare(a.rhs(), b.rhs());
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (int c = a.var().compare(b.var())) return c < 0 ? -1 : 1;
      return compare(a.body(), b.body());
    }
  }
  return 0;
}

inline bool formula_less(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// --- variables ---------------------------------------------------------

namespace detail {
inline void term_vars(const Term& t, std::set<std::string>& out) {
  if (!t.is_fn) out.insert(t.name);
  for (const auto& a : t.args) term_vars(a, out);
}
inline void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) {
        std::set<std::string> vs;
        term_vars(t, vs);
        for (auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      return;
    case Formula::Kind::Top: return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      free_vars_rec(f.lhs(), bound, out);
      free_vars_rec(f.rhs(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f.var()).second;
      free_vars_rec(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
  }
}
inline Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (!t.is_fn) {
    auto it = env.find(t.name);
    return Term::var(it == env.end() ? t.name : it->second);
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(rename_term(a, env));
  return Term::fn(t.name, std::move(args));
}
}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars_rec(f, bound, out);
  return out;
}

inline std::set<std::string> all_var_names(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      for (const auto& t : f.args()) detail::term_vars(t, out);
      return out;
    }
    case Formula::Kind::Top: return out;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      out = all_var_names(f.lhs());
      auto r = all_var_names(f.rhs());
      out.insert(r.begin(), r.end());
      return out;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out = all_var_names(f.body());
      out.insert(f.var());
      return out;
    }
  }
  return out;
}

// Supplies names v, v1, v2, ... that avoid a growing set.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}
  void avoid(const std::set<std::string>& more) { avoid_.insert(more.begin(), more.end()); }
  std::string fresh(const std::string& base) {
    if (!avoid_.count(base)) {
      avoid_.insert(base);
      return base;
    }
    for (unsigned long k = counter_++;; k = counter_++) {
      std::string cand = base + std::to_string(k);
      if (!avoid_.count(cand)) {
        avoid_.insert(cand);
        return cand;
      }
    }
  }

 private:
  std::set<std::string> avoid_;
  unsigned long counter_ = 1;
};

namespace detail {
inline Formula rename_binders(const Formula& f, std::map<std::string, std::string>& env,
                              FreshNames& names) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& t : f.args()) args.push_back(rename_term(t, env));
      return Formula::atom(f.name(), std::move(args));
    }
    case Formula::Kind::Top: return f;
    case Formula::Kind::And:
      return Formula::conj(rename_binders(f.lhs(), env, names), rename_binders(f.rhs(), env, names));
    case Formula::Kind::Or:
      return Formula::disj(rename_binders(f.lhs(), env, names), rename_binders(f.rhs(), env, names));
    case Formula::Kind::Imp:
      return Formula::imp(rename_binders(f.lhs(), env, names), rename_binders(f.rhs(), env, names));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string nv = names.fresh(f.var());
      auto saved = env.find(f.var()) == env.end() ? std::optional<std::string>{}
                                                  : std::optional<std::string>{env[f.var()]};
      env[f.var()] = nv;
      Formula body = rename_binders(f.body(), env, names);
      if (saved)
        env[f.var()] = *saved;
      else
        env.erase(f.var());
      return f.kind() == Formula::Kind::Forall ? Formula::forall(nv, std::move(body))
                                               : Formula::exists(nv, std::move(body));
    }
  }
  return f;
}
}  // namespace detail

// Alpha-renames every binder to a name outside `avoid` (and outside the
// formula's own free variables), making bound names pairwise distinct.
inline Formula rename_fresh(const Formula& f, const std::set<std::string>& avoid = {}) {
  FreshNames names(avoid);
  names.avoid(free_vars(f));
  std::map<std::string, std::string> env;
  return detail::rename_binders(f, env, names);
}

// Binder names made locally unique; used on parser output.
inline Formula alpha_normalize(const Formula& f) { return rename_fresh(f, {}); }

namespace detail {
inline bool alpha_eq(const Formula& a, const Formula& b,
                     std::map<std::string, std::string>& ab,
                     std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      // terms must agree under the binder correspondence
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!(rename_term(a.args()[i], ab) == b.args()[i])) return false;
      return true;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return alpha_eq(a.lhs(), b.lhs(), ab, ba) && alpha_eq(a.rhs(), b.rhs(), ab, ba);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto sab = ab, sba = ba;
      ab[a.var()] = b.var();
      ba[b.var()] = a.var();
      bool ok = alpha_eq(a.body(), b.body(), ab, ba);
      ab = sab;
      ba = sba;
      return ok;
    }
  }
  return false;
}
}  // namespace detail

inline bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, std::string> ab, ba;
  return detail::alpha_eq(a, b, ab, ba);
}

// --- top simplification -------------------------------------------------

// Rewrites T&F ~> F, F&T ~> F, T->F ~> F, F->T ~> T to a fixed point,
// innermost first. Occurrences of top inside disjunctions are kept.
inline Formula simplify_top(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Top: return f;
    case Formula::Kind::And: {
      Formula a = simplify_top(f.lhs()), b = simplify_top(f.rhs());
      if (a.is(Formula::Kind::Top)) return b;
      if (b.is(Formula::Kind::Top)) return a;
      return Formula::conj(std::move(a), std::move(b));
    }
    case Formula::Kind::Or:
      return Formula::disj(simplify_top(f.lhs()), simplify_top(f.rhs()));
    case Formula::Kind::Imp: {
      Formula a = simplify_top(f.lhs()), b = simplify_top(f.rhs());
      if (b.is(Formula::Kind::Top)) return Formula::top();
      if (a.is(Formula::Kind::Top)) return b;
      return Formula::imp(std::move(a), std::move(b));
    }
    case Formula::Kind::Forall:
      return Formula::forall(f.var(), simplify_top(f.body()));
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), simplify_top(f.body()));
  }
  return f;
}

inline bool contains_top(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: return false;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: return contains_top(f.lhs()) || contains_top(f.rhs());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return contains_top(f.body());
  }
  return false;
}

inline bool contains_quantifier(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom: return false;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: return contains_quantifier(f.lhs()) || contains_quantifier(f.rhs());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return true;
  }
  return false;
}

// Replaces every occurrence of top by the given formula (used by the prover,
// which substitutes a unit like t->t for residual tops).
inline Formula replace_top(const Formula& f, const Formula& unit) {
  switch (f.kind()) {
    case Formula::Kind::Top: return unit;
    case Formula::Kind::Atom: return f;
    case Formula::Kind::And:
      return Formula::conj(replace_top(f.lhs(), unit), replace_top(f.rhs(), unit));
    case Formula::Kind::Or:
      return Formula::disj(replace_top(f.lhs(), unit), replace_top(f.rhs(), unit));
    case Formula::Kind::Imp:
      return Formula::imp(replace_top(f.lhs(), unit), replace_top(f.rhs(), unit));
    case Formula::Kind::Forall:
      return Formula::forall(f.var(), replace_top(f.body(), unit));
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), replace_top(f.body(), unit));
  }
  return f;
}

inline std::set<std::string> atom_names(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return {f.name()};
    case Formula::Kind::Top: return {};
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      auto l = atom_names(f.lhs());
      auto r = atom_names(f.rhs());
      l.insert(r.begin(), r.end());
      return l;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return atom_names(f.body());
  }
  return {};
}

// --- sequents -----------------------------------------------------------

// Context is a multiset; it is stored sorted under the fixed total order so
// that equal multisets compare equal as vectors.
struct Sequent {
  std::vector<Formula> context;
  Formula goal;

  Sequent() : goal(Formula::top()) {}
  Sequent(std::vector<Formula> ctx, Formula g) : context(std::move(ctx)), goal(std::move(g)) {
    std::sort(context.begin(), context.end(), formula_less);
  }

  bool operator==(const Sequent& o) const { return goal == o.goal && context == o.context; }
  bool operator!=(const Sequent& o) const { return !(*this == o); }

  Sequent with(Formula extra) const {
    auto ctx = context;
    ctx.push_back(std::move(extra));
    return Sequent(std::move(ctx), goal);
  }
  Sequent without(size_t idx) const {
    auto ctx = context;
    ctx.erase(ctx.begin() + static_cast<long>(idx));
    return Sequent(std::move(ctx), goal);
  }
  Sequent with_goal(Formula g) const {
    auto s = *this;
    s.goal = std::move(g);
    return s;
  }
};

inline int compare(const Sequent& a, const Sequent& b) {
  if (int c = compare(a.goal, b.goal)) return c;
  if (a.context.size() != b.context.size()) return a.context.size() < b.context.size() ? -1 : 1;
  for (size_t i = 0; i < a.context.size(); ++i)
    if (int c = compare(a.context[i], b.context[i])) return c;
  return 0;
}

// Simplifies all formulas and drops top from the context.
inline Sequent simplify_top(const Sequent& s) {
  std::vector<Formula> ctx;
  ctx.reserve(s.context.size());
  for (const auto& f : s.context) {
    Formula g = simplify_top(f);
    if (!g.is(Formula::Kind::Top)) ctx.push_back(std::move(g));
  }
  return Sequent(std::move(ctx), simplify_top(s.goal));
}

// Reads a sequent as its formula: context conjunction (right-nested, in
// canonical order) implying the goal; the empty context gives the goal.
inline Formula sequent_formula(const Sequent& s) {
  if (s.context.empty()) return s.goal;
  Formula c = s.context.back();
  for (size_t i = s.context.size() - 1; i-- > 0;) c = Formula::conj(s.context[i], c);
  return Formula::imp(std::move(c), s.goal);
}

}  // namespace explog
