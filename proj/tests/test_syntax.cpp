#include <catch2/catch_amalgamated.hpp>

#include "explog/formula.hpp"
#include "explog/interp.hpp"
#include "explog/parser.hpp"
#include "explog/printer.hpp"
#include "generators.hpp"

using namespace explog;

TEST_CASE("parser precedence and associativity") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");

  CHECK(parse_formula("p -> q -> r") == Formula::imp(p, Formula::imp(q, r)));
  CHECK(parse_formula("p & q | r") == Formula::disj(Formula::conj(p, q), r));
  CHECK(parse_formula("p | q & r") == Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse_formula("p & q -> r") == Formula::imp(Formula::conj(p, q), r));
  CHECK(parse_formula("p & q & r") == Formula::conj(Formula::conj(p, q), r));
  CHECK(parse_formula("top") == Formula::top());
  CHECK(parse_formula("1") == Formula::top());
  // bot is an ordinary atom
  CHECK(parse_formula("bot") == Formula::atom("bot"));
}

TEST_CASE("parser golden: the worked example formula") {
  Formula f = parse_formula("r & (q -> (r | t) -> s) -> q -> s");
  Formula q = Formula::atom("q"), r = Formula::atom("r"), s = Formula::atom("s"),
          t = Formula::atom("t");
  Formula expect = Formula::imp(
      Formula::conj(r, Formula::imp(q, Formula::imp(Formula::disj(r, t), s))),
      Formula::imp(q, s));
  CHECK(f == expect);
}

TEST_CASE("parser: quantifier scope extends maximally right") {
  Formula f = parse_formula("forall x. P(x) -> q");
  REQUIRE(f.is(Formula::Kind::Forall));
  CHECK(f.body() == Formula::imp(Formula::atom("P", {Term::var("x")}), Formula::atom("q")));

  Formula g = parse_formula("p -> exists y. Q(y) | r");
  REQUIRE(g.is(Formula::Kind::Imp));
  CHECK(g.rhs().is(Formula::Kind::Exists));
}

TEST_CASE("parser reports positions on syntax errors") {
  CHECK_THROWS_AS(parse_formula("p -> "), ParseError);
  CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  try {
    parse_formula("p & ");
  } catch (const ParseError& e) {
    CHECK(e.position >= 3);
  }
}

TEST_CASE("binders are alpha-normalized on ingestion") {
  Formula f = parse_formula("(forall x. P(x)) & (forall x. Q(x))");
  REQUIRE(f.is(Formula::Kind::And));
  CHECK(f.lhs().var() != f.rhs().var());

  // free occurrence is preserved, bound one renamed away from it
  Formula g = parse_formula("P(x) & forall x. P(x)");
  CHECK(free_vars(g) == std::set<std::string>{"x"});
  CHECK(g.rhs().var() != "x");
}

TEST_CASE("polynomial notation printer") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(print_polynomial(Formula::imp(Formula::conj(p, q), r)) == "r^(p q)");
  CHECK(print_polynomial(Formula::imp(p, Formula::disj(q, r))) == "(q + r)^p");
  CHECK(print_polynomial(Formula::top()) == "1");
  Formula fol = Formula::forall("x", Formula::imp(Formula::atom("P", {Term::var("x")}),
                                                  Formula::atom("q")));
  CHECK(print_polynomial(fol) == "(q^P(x))^x");
}

TEST_CASE("print_logical round-trips up to alpha equivalence") {
  testgen::Rng rng(7);
  std::vector<std::string> atoms = {"p", "q", "r", "s"};
  for (int i = 0; i < 300; ++i) {
    Formula f = testgen::random_formula(rng, atoms, 1 + static_cast<int>(rng.below(9)), true);
    CHECK(parse_formula(print_logical(f)) == f);
  }
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(7)));
    CHECK(alpha_equal(parse_formula(print_logical(f)), f));
  }
}

TEST_CASE("simplify_top") {
  Formula p = Formula::atom("p");
  CHECK(simplify_top(Formula::imp(Formula::top(), p)) == p);
  CHECK(simplify_top(Formula::imp(p, Formula::top())) == Formula::top());
  CHECK(simplify_top(Formula::conj(Formula::top(), p)) == p);
  CHECK(simplify_top(Formula::conj(p, Formula::top())) == p);
  // disjunctions are not reduced
  Formula tp = Formula::disj(Formula::top(), p);
  CHECK(simplify_top(tp) == tp);
  // nested, innermost first: (p -> top) & p  ~>  p
  CHECK(simplify_top(Formula::conj(Formula::imp(p, Formula::top()), p)) == p);
}

TEST_CASE("simplify_top is idempotent and value-preserving") {
  testgen::Rng rng(11);
  std::vector<std::string> atoms = {"p", "q"};
  Valuation v;
  int evaluated = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = testgen::random_formula(rng, atoms, 1 + static_cast<int>(rng.below(8)), true);
    Formula s = simplify_top(f);
    CHECK(simplify_top(s) == s);
    try {
      BigNat a = eval_formula(f, v);
      CHECK(a == eval_formula(s, v));
      ++evaluated;
    } catch (const EvalOverflow&) {
      // towers past the digit guard are skipped
    }
  }
  CHECK(evaluated > 300);
}

TEST_CASE("free_vars and rename_fresh") {
  Formula f = Formula::forall(
      "x", Formula::imp(Formula::atom("P", {Term::var("x")}), Formula::atom("Q", {Term::var("y")})));
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  CHECK(free_vars(Formula::atom("p")).empty());

  Formula g = Formula::forall("x", Formula::atom("P", {Term::var("x")}));
  Formula h = rename_fresh(g, {"x"});
  REQUIRE(h.is(Formula::Kind::Forall));
  CHECK(h.var() != "x");
  CHECK(alpha_equal(g, h));
}

TEST_CASE("contexts are multisets under a canonical order") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  Sequent a({p, q, r}, p);
  Sequent b({r, p, q}, p);
  CHECK(a == b);
  Sequent c({p, p, q}, p);
  Sequent d({p, q}, p);
  CHECK(c != d);  // multiset, not set
}

TEST_CASE("sequent top simplification drops top from the context") {
  Formula p = Formula::atom("p");
  Sequent s({Formula::top(), p, Formula::imp(p, Formula::top())}, p);
  Sequent t = simplify_top(s);
  CHECK(t.context.size() == 1);
  CHECK(t.context[0] == p);
}
