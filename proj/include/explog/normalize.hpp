#pragma once

// The exp-log normalization pipeline. The flattening operators work on flat
// vectors, so unit and associativity clauses hold definitionally:
//
//   nplus      (+)  : E -> E -> D   concatenation of summand lists
//   ntimes     (x)  : C -> C -> C   concatenation of factor lists
//   distribone (|x) : C -> E -> E   left distribution
//   distrib    (x|) : E -> E -> E   full distribution (row-major)
//   explogone  (up) : B -> E -> C   exponential of a base by a sum
//   explogn    (Up) : C -> E -> C   exponential of a product
//
// nplus1, distrib0, distribn, explog0 are the sub-cases restricted to sums,
// named as the equations of the lemma suite refer to them.
//
// and the quantifier extension
//
//   qexplogone : B -> E -> Vars -> C
//   explogall  : C -> Vars -> C    append universal variables
//   distribex  : Vars -> E -> E    distribute an existential block
//
// Quantifier prefixes are ordered innermost-first. Where a new variable
// enters a prefix, qexplogone places absorbed existential variables inside
// the prefix it was given (and recurses through nested blocks); explogall
// appends its variables at the outer end. This keeps the quantifier
// isomorphisms structurally confluent: normalizing the two sides of
// (FG)^x = F^x G^x, x(F+G) = xF + xG, G^{xF} = (G^F)^x, (F^x)^G = (F^G)^x
// yields identical terms.

#include <cassert>

#include "explog/formula.hpp"
#include "explog/normal_form.hpp"

namespace explog {

// + : flattened concatenation; the result always has >= 2 summands.
inline Sum nplus(const NF& e1, const NF& e2) {
  std::vector<Conj> ss = to_summands(e1);
  for (auto& s : to_summands(e2)) ss.push_back(std::move(s));
  return Sum(std::move(ss));
}

// The sub-case of + whose first argument is a sum (the helper the
// associativity equations quantify over separately).
inline Sum nplus1(const Sum& d, const NF& e) { return nplus(NF(d), e); }

// x : flattened concatenation of factor lists; 1 is a two-sided unit.
inline Conj ntimes(const Conj& c1, const Conj& c2) {
  std::vector<Factor> fs = c1.factors;
  fs.insert(fs.end(), c2.factors.begin(), c2.factors.end());
  return Conj(std::move(fs));
}

// c |x e : multiply every summand of e by c on the left.
inline NF distribone(const Conj& c, const NF& e) {
  if (is_conj(e)) return NF(ntimes(c, as_conj(e)));
  std::vector<Conj> ss;
  ss.reserve(as_sum(e).size());
  for (const auto& s : as_sum(e).summands) ss.push_back(ntimes(c, s));
  return NF(Sum(std::move(ss)));
}

// Sub-case of |x with a sum on the right.
inline Sum distrib0(const Conj& c, const Sum& d) { return as_sum(distribone(c, NF(d))); }

// e1 x| e2 : full distribution; summands appear in row-major order, so the
// summand count multiplies.
inline NF distrib(const NF& e1, const NF& e2) {
  std::vector<Conj> ss;
  ss.reserve(summand_count(e1) * summand_count(e2));
  for (const auto& s1 : to_summands(e1))
    for (const auto& s2 : to_summands(e2)) ss.push_back(ntimes(s1, s2));
  return nf_from_summands(std::move(ss));
}

// Sub-case of x| with a sum on the left.
inline Sum distribn(const Sum& d, const NF& e) { return as_sum(distrib(NF(d), e)); }

// up : B -> E -> Vars -> C. Exponentiation by a sum becomes a product of
// exponentials; an existential block in the exponent moves into the
// universal prefix (innermost position). Blocks are absorbed from any
// position of the exponent product, leftmost first and recursively through
// nested blocks, so that the exponent of the resulting factor is free of
// trivially-exponentiated existentials. Binders are globally fresh here, so
// the moves cannot capture.
inline Conj qexplogone(const Base& b, const NF& e, const Vars& vars) {
  if (is_conj(e)) {
    const Conj& c = as_conj(e);
    for (size_t i = 0; i < c.factors.size(); ++i) {
      const Factor& f = c.factors[i];
      if (!(f.vars.empty() && f.exp.is_unit() && f.base.is_ex())) continue;
      Vars inner = f.base.ex().vars;
      inner.insert(inner.end(), vars.begin(), vars.end());
      const Conj& body = f.base.ex().body;
      std::vector<Factor> fs;
      fs.reserve(c.factors.size() - 1 + body.size());
      fs.insert(fs.end(), c.factors.begin(), c.factors.begin() + static_cast<long>(i));
      fs.insert(fs.end(), body.factors.begin(), body.factors.end());
      fs.insert(fs.end(), c.factors.begin() + static_cast<long>(i) + 1, c.factors.end());
      return qexplogone(b, NF(Conj(std::move(fs))), inner);
    }
    return Conj({factor(b, c, vars)});
  }
  std::vector<Factor> fs;
  for (const auto& s : as_sum(e).summands) {
    Conj piece = qexplogone(b, NF(s), vars);
    fs.insert(fs.end(), piece.factors.begin(), piece.factors.end());
  }
  return Conj(std::move(fs));
}

inline Conj explogone(const Base& b, const NF& e) { return qexplogone(b, e, {}); }

// Sub-case of up with a sum exponent.
inline Conj explog0(const Base& b, const Sum& d) { return explogone(b, NF(d)); }

// Up : each factor (b^c1)^x of the base contributes up b (c1 |x e) under its
// own prefix.
inline Conj explogn(const Conj& c, const NF& e) {
  std::vector<Factor> fs;
  for (const auto& f : c.factors) {
    Conj piece = qexplogone(f.base, distribone(f.exp, e), f.vars);
    fs.insert(fs.end(), piece.factors.begin(), piece.factors.end());
  }
  return Conj(std::move(fs));
}

// Appends universal variables to every factor's prefix (outer end).
inline Conj explogall(const Conj& c, const Vars& vars) {
  std::vector<Factor> fs;
  fs.reserve(c.size());
  for (const auto& f : c.factors) {
    Vars vs = f.vars;
    vs.insert(vs.end(), vars.begin(), vars.end());
    fs.push_back(Factor{std::move(vs), f.base, f.exp});
  }
  return Conj(std::move(fs));
}

// Wraps a conjunction as the existential block x c, injected into C with a
// trivial exponent (the same shape the disjunction clause of enfpos uses).
inline Conj ex_block(const Vars& vars, Conj body) {
  return Conj({factor(Base(Ex{vars, std::move(body)}))});
}

// x |exists e : distribute an existential block over a sum.
inline NF distribex(const Vars& vars, const NF& e) {
  std::vector<Conj> ss;
  ss.reserve(summand_count(e));
  for (const auto& s : to_summands(e)) ss.push_back(ex_block(vars, s));
  return nf_from_summands(std::move(ss));
}

// --- the normalization functions -------------------------------------------

namespace detail {

inline NF enf_rec(const Formula& f);

inline Conj enfpos_rec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return prime_conj(f.name(), f.args());
    case Formula::Kind::Top: return unit_conj();  // top is the nullary product
    case Formula::Kind::Or: {
      // suspend the sum under a trivial exponent
      Sum d = nplus(NF(enfpos_rec(f.lhs())), NF(enfpos_rec(f.rhs())));
      return Conj({factor(Base(std::move(d)))});
    }
    case Formula::Kind::And: return ntimes(enfpos_rec(f.lhs()), enfpos_rec(f.rhs()));
    case Formula::Kind::Imp: return explogn(enfpos_rec(f.rhs()), enf_rec(f.lhs()));
    case Formula::Kind::Exists: return ex_block({f.var()}, enfpos_rec(f.body()));
    case Formula::Kind::Forall: return explogall(enfpos_rec(f.body()), {f.var()});
  }
  return unit_conj();
}

inline NF enf_rec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return NF(prime_conj(f.name(), f.args()));
    case Formula::Kind::Top: return NF(unit_conj());
    case Formula::Kind::Or: {
      assert(f.lhs().size() < f.size() && f.rhs().size() < f.size());
      return NF(nplus(enf_rec(f.lhs()), enf_rec(f.rhs())));
    }
    case Formula::Kind::And: return distrib(enf_rec(f.lhs()), enf_rec(f.rhs()));
    case Formula::Kind::Imp: return NF(explogn(enfpos_rec(f.rhs()), enf_rec(f.lhs())));
    case Formula::Kind::Exists: return distribex({f.var()}, enf_rec(f.body()));
    case Formula::Kind::Forall: return NF(explogall(enfpos_rec(f.body()), {f.var()}));
  }
  return NF(unit_conj());
}

}  // namespace detail

// <F> : Formula -> E. Binders are freshened first so that pushing
// quantifiers around cannot capture; each call owns its name supply.
inline NF enf(const Formula& f) {
  return detail::enf_rec(contains_quantifier(f) ? rename_fresh(f) : f);
}

// <F>+ : Formula -> C, with disjunctions suspended under a trivial exponent.
inline Conj enfpos(const Formula& f) {
  return detail::enfpos_rec(contains_quantifier(f) ? rename_fresh(f) : f);
}

// --- the expansion map (the partial-to-full normal form map) ----------------

// Distributes products over sums suspended under a trivial exponent, so that
// expand_partial(enfpos(F)) == enf(F). Suspensions are expanded recursively;
// factors already in expanded discipline pass through unchanged.
inline NF expand_partial(const Conj& c) {
  NF acc{unit_conj()};
  for (size_t i = c.factors.size(); i-- > 0;) {
    const Factor& f = c.factors[i];
    NF piece{Conj({f})};
    if (f.vars.empty() && f.exp.is_unit()) {
      if (f.base.is_sum()) {
        std::vector<Conj> ss;
        for (const auto& s : f.base.sum().summands)
          for (auto& t : to_summands(expand_partial(s))) ss.push_back(std::move(t));
        piece = nf_from_summands(std::move(ss));
      } else if (f.base.is_ex()) {
        piece = distribex(f.base.ex().vars, expand_partial(f.base.ex().body));
      }
    }
    acc = distrib(piece, acc);
  }
  return acc;
}

// eta-style view used by sequent images: the normal form of a context
// multiset, i.e. of the conjunction of its formulas in canonical order.
inline NF enf_context(const std::vector<Formula>& context) {
  NF acc{unit_conj()};
  for (size_t i = context.size(); i-- > 0;) acc = distrib(enf(context[i]), acc);
  return acc;
}

// Normal form of a sequent read as a formula (goal ^ context).
inline Conj enf_sequent(const Sequent& s) { return explogn(enfpos(s.goal), enf_context(s.context)); }

}  // namespace explog
