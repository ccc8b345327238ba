#include <doctest.h>

#include "tabipol/formula.hpp"
#include "tabipol/parse.hpp"

using namespace tabipol;

TEST_CASE("free variables") {
  CHECK(free_vars(parse_formula("p(X, f(Y))")) ==
        std::set<std::string>{"X", "Y"});
  CHECK(free_vars(parse_formula("all X. p(X, Y)")) ==
        std::set<std::string>{"Y"});
  // a closed formula with nested binders
  Formula f = parse_formula("all X1. all X2. p(X1, h(f1(X1)), X2)");
  CHECK(free_vars(f).empty());
  CHECK(is_sentence(f));
}

TEST_CASE("vocabulary respects polarity and collects pargs") {
  Formula f = parse_formula("~p(a) | q(f(b))");
  Vocabulary v = vocabulary(f);
  CHECK(v.preds == std::set<std::pair<std::string, bool>>{{"p", false},
                                                          {"q", true}});
  CHECK(v.funs == std::set<std::string>{"a", "f", "b"});
  CHECK(v.pargs == std::set<Term>{parse_term("a"), parse_term("f(b)")});

  SUBCASE("double negation restores polarity") {
    Vocabulary w = vocabulary(parse_formula("~(~p(a))"));
    CHECK(w.preds == std::set<std::pair<std::string, bool>>{{"p", true}});
  }

  SUBCASE("functions of a nested-term sentence") {
    Vocabulary u =
        vocabulary(parse_formula("all X1. all X2. p(X1, h(f1(X1)), X2)"));
    CHECK(u.funs == std::set<std::string>{"h", "f1"});
  }

  SUBCASE("negating a formula swaps every polarity") {
    Formula g = parse_formula("(p(a) | ~q(b)) & r(a)");
    Vocabulary vg = vocabulary(g);
    Vocabulary vng = vocabulary(Formula::negation(g));
    for (const auto& [p, pol] : vg.preds)
      CHECK(vng.preds.count({p, !pol}) == 1);
  }
}

TEST_CASE("substitution on formulas with capture detection") {
  Substitution s;
  s.set("X", parse_term("a"));
  CHECK(apply_subst(parse_formula("p(X,Y)"), s) == parse_formula("p(a,Y)"));

  // identity application
  Substitution id;
  Formula f = parse_formula("all X. p(X) & q(Y)");
  CHECK(apply_subst(f, id) == f);

  // capture: substituting Y -> X under a binder on X
  Substitution bad;
  bad.set("Y", Term::var("X"));
  CHECK_THROWS_WITH_AS(apply_subst(parse_formula("all X. p(X, Y)"), bad),
                       "capture", LogicError);
}

TEST_CASE("garg collects ground predicate arguments only") {
  Formula f = parse_formula("all X. p(a, g(a), g(b), X, f(Y, b))");
  CHECK(garg(f) == std::set<Term>{parse_term("a"), parse_term("g(a)"),
                                  parse_term("g(b)")});
  CHECK(garg(parse_formula("p(X)")).empty());

  SUBCASE("relational formulas: garg equals the constants") {
    Formula r = parse_formula("all X. (~r(X) | s(X, c) | q(d))");
    Vocabulary v = vocabulary(r);
    std::set<Term> expect;
    for (const auto& c : v.consts) expect.insert(Term::constant(c));
    CHECK(garg(r) == expect);
  }
}

TEST_CASE("argument-position inverse substitution") {
  Substitution s;
  s.set("V", parse_term("a"));
  CHECK(top_inverse_subst(parse_formula("p(a, f(a))"), s) ==
        parse_formula("p(V, f(a))"));

  SUBCASE("empty substitution changes nothing") {
    Substitution id;
    Formula f = parse_formula("p(a, f(a))");
    CHECK(top_inverse_subst(f, id) == f);
  }

  SUBCASE("single constant argument") {
    Substitution s2;
    s2.set("V", parse_term("g"));
    CHECK(top_inverse_subst(parse_formula("r(g)"), s2) ==
          parse_formula("r(V)"));
  }

  SUBCASE("range must consist of ground arguments") {
    Substitution s3;
    s3.set("V", parse_term("b"));
    CHECK_THROWS_AS(top_inverse_subst(parse_formula("p(a)"), s3), LogicError);
  }

  SUBCASE("domain must be fresh") {
    Substitution s4;
    s4.set("X", parse_term("a"));
    CHECK_THROWS_AS(top_inverse_subst(parse_formula("p(a, X)"), s4),
                    LogicError);
  }

  SUBCASE("free variables grow exactly by the used domain") {
    Formula f = parse_formula("p(a, f(a), Y)");
    Substitution s5;
    s5.set("V", parse_term("a"));
    Formula g = top_inverse_subst(f, s5);
    CHECK(free_vars(g) == std::set<std::string>{"V", "Y"});
  }
}

TEST_CASE("alpha equivalence") {
  Formula a = parse_formula("all X. ex Y. p(X, Y)");
  Formula b = parse_formula("all U. ex V. p(U, V)");
  Formula c = parse_formula("all U. ex V. p(V, U)");
  CHECK(alpha_equal(a, b));
  CHECK(!alpha_equal(a, c));
  CHECK(alpha_equal(parse_formula("p(a)"), parse_formula("p(a)")));
  CHECK(!alpha_equal(parse_formula("p(a)"), parse_formula("p(b)")));
}

TEST_CASE("constant folding only touches truth constants") {
  CHECK(fold_constants(parse_formula("p & true")) == parse_formula("p"));
  CHECK(fold_constants(parse_formula("p & false")) == parse_formula("false"));
  CHECK(fold_constants(parse_formula("p | true")) == parse_formula("true"));
  CHECK(fold_constants(parse_formula("p | false")) == parse_formula("p"));
  CHECK(fold_constants(parse_formula("~true")) == parse_formula("false"));
  Formula same = parse_formula("p & (q | r)");
  CHECK(fold_constants(same) == same);
}

TEST_CASE("polarity-aware quantifier occurrence") {
  CHECK(has_existential(parse_formula("ex X. p(X)")));
  CHECK(!has_existential(parse_formula("all X. p(X)")));
  CHECK(has_existential(parse_formula("~(all X. p(X))")));
  CHECK(has_universal(parse_formula("~(ex X. p(X))")));
}
