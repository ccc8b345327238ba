#include <doctest.h>

#include "support.hpp"
#include "tabipol/parse.hpp"

using namespace tabipol;

TEST_CASE("basic parses") {
  CHECK(parse_formula("p") == Formula::atom("p"));
  CHECK(parse_formula("p & q") ==
        Formula::conj({Formula::atom("p"), Formula::atom("q")}));
  // implication is sugar
  CHECK(parse_formula("p -> q") == parse_formula("~p | q"));
  CHECK(parse_formula("p <-> q") == parse_formula("(~p | q) & (~q | p)"));
  // precedence: ~ > & > | > ->
  CHECK(parse_formula("~p & q | r") == parse_formula("((~p) & q) | r"));
  // quantifier scope extends maximally right
  CHECK(parse_formula("all X. p(X) & q(X)") ==
        parse_formula("all X. (p(X) & q(X))"));
  CHECK(parse_formula("all X. (~r(X) | ex Y. (s(X,Y) & true))").kind() ==
        Formula::Kind::Forall);
}

TEST_CASE("n-ary connectives are flattened") {
  Formula f = parse_formula("p & q & r");
  REQUIRE(f.is(Formula::Kind::And));
  CHECK(f.parts().size() == 3);
  Formula g = parse_formula("p & (q & r)");
  CHECK(f == g);
}

TEST_CASE("arity conflicts are rejected") {
  CHECK_THROWS_AS(parse_formula("p(X) & p(X,Y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("p(f(a), f(a,b))"), ParseError);
  CHECK_NOTHROW(parse_formula("p(X) & q(X,Y)"));
}

TEST_CASE("syntax errors carry a span") {
  try {
    parse_formula("p & ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span.start >= 4);
  }
  CHECK_THROWS_AS(parse_formula("all x. p(x)"), ParseError);  // lowercase var
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
}

TEST_CASE("printing round trip") {
  for (const char* txt : {
           "p",
           "p & q",
           "p | q & r",
           "~p(a, f(b, X))",
           "all X. (~r(X) | p(X))",
           "all X. ex Y. (s(X, Y) & true)",
           "(p | q) & (r | s1)",
           "~(p & q)",
           "all X1. all X2. p(X1, h(f1(X1)), X2)",
       }) {
    Formula f = parse_formula(txt);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("printing round trip on random formulas") {
  ttest::Rng rng(20240817);
  for (int i = 0; i < 200; ++i) {
    Formula f = ttest::random_clause_formula(rng, 6, 6, 4);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("underscore-led identifiers are variables") {
  Formula f = parse_formula("p(_v1, a)");
  CHECK(free_vars(f) == std::set<std::string>{"_v1"});
}
