#include <catch2/catch_amalgamated.hpp>

#include "explog/interp.hpp"
#include "explog/normal_form.hpp"
#include "explog/normalize.hpp"
#include "explog/parser.hpp"
#include "explog/printer.hpp"
#include "generators.hpp"

using namespace explog;

namespace {
// structural equality of normal forms up to bound-variable names
bool nf_alpha_equal(const NF& a, const NF& b) { return alpha_equal(embed(a), embed(b)); }

Formula FA(const char* pred, const char* var) {
  return Formula::atom(pred, {Term::var(var)});
}
}  // namespace

TEST_CASE("distribex distributes an existential over a sum") {
  // enf(exists x (P | Q)) = xP + xQ
  NF e = enf(parse_formula("exists x. P(x) | Q(x)"));
  REQUIRE(is_sum(e));
  const Sum& d = as_sum(e);
  REQUIRE(d.size() == 2);
  for (const auto& s : d.summands) {
    REQUIRE(s.size() == 1);
    CHECK(s.factors[0].base.is_ex());
    CHECK(s.factors[0].exp.is_unit());
    CHECK(s.factors[0].vars.empty());
  }
  CHECK(nf_alpha_equal(e, enf(parse_formula("(exists x. P(x)) | (exists y. Q(y))"))));
}

TEST_CASE("an existential antecedent becomes a universal prefix") {
  // enf(exists x P(x) -> q) = (q^{P(x)})^x
  NF e = enf(parse_formula("(exists x. P(x)) -> q"));
  REQUIRE(is_conj(e));
  const Conj& c = as_conj(e);
  REQUIRE(c.size() == 1);
  const Factor& f = c.factors[0];
  REQUIRE(f.vars.size() == 1);
  CHECK(f.base == Base(Prime{"q", {}}));
  REQUIRE(f.exp.size() == 1);
  CHECK(f.exp.factors[0].base.is_prime());
  CHECK(f.exp.factors[0].base.prime().name == "P");
  CHECK(print_polynomial(e) == "(q^{P(" + f.vars[0] + ")})^" + f.vars[0]);

  CHECK(nf_alpha_equal(e, enf(parse_formula("forall x. P(x) -> q"))));
}

TEST_CASE("explogall annotates every factor") {
  // enf(forall x P(x)) = (P(x)^1)^x
  NF e = enf(parse_formula("forall x. P(x)"));
  REQUIRE(is_conj(e));
  REQUIRE(as_conj(e).size() == 1);
  const Factor& f = as_conj(e).factors[0];
  CHECK(f.vars == Vars{"x"});
  CHECK(f.exp.is_unit());

  // the universal distributes over a conjunction
  CHECK(nf_alpha_equal(enf(parse_formula("forall x. P(x) & Q(x)")),
                       enf(parse_formula("(forall x. P(x)) & (forall y. Q(y))"))));
}

TEST_CASE("quantifier prefixes nest innermost-first") {
  NF e = enf(parse_formula("forall x. forall y. P(x,y)"));
  REQUIRE(is_conj(e));
  const Factor& f = as_conj(e).factors[0];
  REQUIRE(f.vars.size() == 2);
  // embed reads the list back outermost-last
  Formula g = embed(e);
  REQUIRE(g.is(Formula::Kind::Forall));
  REQUIRE(g.body().is(Formula::Kind::Forall));
  CHECK(alpha_equal(simplify_top(g), parse_formula("forall x. forall y. P(x,y)")));
}

TEST_CASE("the four quantifier isomorphisms normalize both sides equally") {
  testgen::Rng rng(83);
  int trials = 200;
  for (int i = 0; i < trials; ++i) {
    // F may contain v free; G must not (side condition of 28'/29')
    std::vector<std::string> scope_f = {"v"};
    int next = 100 + i;
    Formula F = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(4)), scope_f, next);
    Formula G = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(4)));

    // (26') forall v (F & G') vs forall v F & forall v G'  (G' any formula)
    {
      Formula lhs = Formula::forall("v", Formula::conj(F, G));
      Formula rhs = Formula::conj(Formula::forall("v", F), Formula::forall("v", G));
      CAPTURE(print_logical(lhs));
      CHECK(nf_alpha_equal(enf(lhs), enf(rhs)));
    }
    // (27') exists v (F | G') vs exists v F | exists v G'
    {
      Formula lhs = Formula::exists("v", Formula::disj(F, G));
      Formula rhs = Formula::disj(Formula::exists("v", F), Formula::exists("v", G));
      CAPTURE(print_logical(lhs));
      CHECK(nf_alpha_equal(enf(lhs), enf(rhs)));
    }
    // (28') (exists v F) -> G vs forall v (F -> G), v not free in G
    {
      Formula lhs = Formula::imp(Formula::exists("v", F), G);
      Formula rhs = Formula::forall("v", Formula::imp(F, G));
      CAPTURE(print_logical(lhs));
      CHECK(nf_alpha_equal(enf(lhs), enf(rhs)));
    }
    // (29') G -> forall v F vs forall v (G -> F), v not free in G
    {
      Formula lhs = Formula::imp(G, Formula::forall("v", F));
      Formula rhs = Formula::forall("v", Formula::imp(G, F));
      CAPTURE(print_logical(lhs));
      CHECK(nf_alpha_equal(enf(lhs), enf(rhs)));
    }
  }
}

TEST_CASE("classification of first-order normal forms") {
  // forall x (P(x) -> exists y Q(x,y)): a Pi whose single factor has an
  // existential base
  NF e = enf(parse_formula("forall x. P(x) -> exists y. Q(x,y)"));
  ClassReport r = classify(e);
  CHECK_FALSE(r.top_is_sigma);
  REQUIRE(is_conj(e));
  REQUIRE(as_conj(e).size() == 1);
  CHECK(as_conj(e).factors[0].base.is_ex());

  // every normal form lands in Sigma union Pi by construction; spot-check
  // that classify handles a spread of random first-order formulas
  testgen::Rng rng(89);
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(6)));
    NF nf = enf(f);
    ClassReport rep = classify(nf);
    CHECK(rep.top_is_sigma == is_sum(nf));
  }
}

TEST_CASE("embedding a first-order normal form is alpha-stable") {
  testgen::Rng rng(97);
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(6)));
    NF e = enf(f);
    CHECK(nf_alpha_equal(enf(embed(e)), e));
  }
}

namespace {
// ground a first-order formula over a two-element domain
Formula substitute_var(const Formula& f, const std::string& v, const Term& t);

Term substitute_var(const Term& s, const std::string& v, const Term& t) {
  if (!s.is_fn) return s.name == v ? t : s;
  std::vector<Term> args;
  for (const auto& a : s.args) args.push_back(substitute_var(a, v, t));
  return Term::fn(s.name, std::move(args));
}

Formula substitute_var(const Formula& f, const std::string& v, const Term& t) {
  switch (f.kind()) {
    case Formula::Kind::Top: return f;
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(substitute_var(a, v, t));
      return Formula::atom(f.name(), std::move(args));
    }
    case Formula::Kind::And:
      return Formula::conj(substitute_var(f.lhs(), v, t), substitute_var(f.rhs(), v, t));
    case Formula::Kind::Or:
      return Formula::disj(substitute_var(f.lhs(), v, t), substitute_var(f.rhs(), v, t));
    case Formula::Kind::Imp:
      return Formula::imp(substitute_var(f.lhs(), v, t), substitute_var(f.rhs(), v, t));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (f.var() == v) return f;
      Formula body = substitute_var(f.body(), v, t);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(f.var(), std::move(body))
                                               : Formula::exists(f.var(), std::move(body));
    }
  }
  return f;
}

Formula ground(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom: return f;
    case Formula::Kind::And: return Formula::conj(ground(f.lhs()), ground(f.rhs()));
    case Formula::Kind::Or: return Formula::disj(ground(f.lhs()), ground(f.rhs()));
    case Formula::Kind::Imp: return Formula::imp(ground(f.lhs()), ground(f.rhs()));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula a = ground(substitute_var(f.body(), f.var(), Term::fn("d0", {})));
      Formula b = ground(substitute_var(f.body(), f.var(), Term::fn("d1", {})));
      return f.kind() == Formula::Kind::Forall ? Formula::conj(std::move(a), std::move(b))
                                               : Formula::disj(std::move(a), std::move(b));
    }
  }
  return f;
}
}  // namespace

TEST_CASE("normalization preserves the value over a two-element domain") {
  testgen::Rng rng(101);
  int evaluated = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_fol(rng, 1 + static_cast<int>(rng.below(5)));
    Valuation v;
    v.set("P", 2 + rng.below(2)).set("Q", 2 + rng.below(2)).set("R", 3);
    try {
      BigNat a = eval_formula(simplify_top(ground(f)), v);
      BigNat b = eval_formula(simplify_top(ground(embed(enf(f)))), v);
      CHECK(a == b);
      ++evaluated;
    } catch (const EvalOverflow&) {
    }
  }
  CHECK(evaluated > 120);
}
