#pragma once

// Printers for the two notations. print_logical emits text the parser
// accepts, round-tripping to an alpha-equivalent formula. print_polynomial
// writes conjunction as juxtaposition, disjunction as +, F->G as G^F,
// exists x F as xF, forall x F as F^x, and top as 1.

#include <string>

#include "explog/formula.hpp"

namespace explog {

namespace detail {

// precedence levels: imp=1 (right assoc), or=2, and=3, unit=4
inline std::string logical(const Formula& f, int parent) {
  auto wrap = [&](const std::string& s, int prec) {
    return prec < parent ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case Formula::Kind::Top: return "top";
    case Formula::Kind::Atom: {
      std::string s = f.name();
      if (!f.args().empty()) {
        s += '(';
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) s += ',';
          s += print_term(f.args()[i]);
        }
        s += ')';
      }
      return s;
    }
    case Formula::Kind::And:
      return wrap(logical(f.lhs(), 3) + " & " + logical(f.rhs(), 4), 3);
    case Formula::Kind::Or:
      return wrap(logical(f.lhs(), 2) + " | " + logical(f.rhs(), 3), 2);
    case Formula::Kind::Imp:
      return wrap(logical(f.lhs(), 2) + " -> " + logical(f.rhs(), 1), 1);
    case Formula::Kind::Forall:
      return wrap("forall " + f.var() + ". " + logical(f.body(), 0), 0);
    case Formula::Kind::Exists:
      return wrap("exists " + f.var() + ". " + logical(f.body(), 0), 0);
  }
  return "";
}

// precedence levels in polynomial notation: sum=1, product=2, atom/exp=3
inline std::string poly(const Formula& f, int parent) {
  auto wrap = [&](const std::string& s, int prec) {
    return prec < parent ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case Formula::Kind::Top: return "1";
    case Formula::Kind::Atom: {
      std::string s = f.name();
      if (!f.args().empty()) {
        s += '(';
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) s += ',';
          s += print_term(f.args()[i]);
        }
        s += ')';
      }
      return s;
    }
    case Formula::Kind::And:
      return wrap(poly(f.lhs(), 2) + " " + poly(f.rhs(), 3), 2);
    case Formula::Kind::Or:
      return wrap(poly(f.lhs(), 1) + " + " + poly(f.rhs(), 2), 1);
    case Formula::Kind::Imp:
      // G^F: base must be atomic-looking, exponent likewise
      return wrap(poly(f.rhs(), 3) + "^" + poly(f.lhs(), 4), 3);
    case Formula::Kind::Forall:
      return wrap(poly(f.body(), 4) + "^" + f.var(), 3);
    case Formula::Kind::Exists:
      return wrap(f.var() + " " + poly(f.body(), 3), 2);
  }
  return "";
}

}  // namespace detail

inline std::string print_logical(const Formula& f) { return detail::logical(f, 0); }
inline std::string print_polynomial(const Formula& f) { return detail::poly(f, 0); }

inline std::string print_sequent(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.context.size(); ++i) {
    if (i) out += ", ";
    out += print_logical(s.context[i]);
  }
  if (!s.context.empty()) out += " ";
  out += "|- " + print_logical(s.goal);
  return out;
}

}  // namespace explog
