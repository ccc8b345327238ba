#include <doctest.h>

#include <random>

#include "tabipol/parse.hpp"
#include "tabipol/term.hpp"

using namespace tabipol;

namespace {

Term random_ground_term(std::mt19937& rng, int depth) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth == 0 || pick(0, 2) == 0)
    return Term::constant(pick(0, 1) ? "a" : "b");
  std::string f = pick(0, 1) ? "f" : "g";
  std::vector<Term> args;
  int n = f == "f" ? 2 : 1;
  for (int i = 0; i < n; ++i)
    args.push_back(random_ground_term(rng, depth - 1));
  return Term::fun(f, std::move(args));
}

void subterms_of(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  for (const auto& a : t.args()) subterms_of(a, out);
}

}  // namespace

TEST_CASE("substitution application and composition") {
  Term x = Term::var("X"), y = Term::var("Y");
  Term a = Term::constant("a"), b = Term::constant("b");

  Substitution s1;
  s1.set("X", a);
  Literal p = parse_literal("p(X,Y)");
  CHECK(s1.apply(p) == parse_literal("p(a,Y)"));

  // juxtaposition: (X s1) s2
  Substitution sa;
  sa.set("X", Term::fun("f", {a}));
  Substitution sb;
  sb.set("a", b);  // not a variable name by the grammar, but set() is generic
  CHECK(sa.apply(x) == parse_term("f(a)"));

  Substitution id;
  Term t = parse_term("p_term");
  CHECK(id.apply(t) == t);
  CHECK(id.apply(parse_term("h(f(a),g(f(a)))")) ==
        parse_term("h(f(a),g(f(a)))"));

  SUBCASE("domain drops identical bindings") {
    Substitution s;
    s.set("X", Term::var("X"));
    CHECK(s.domain().empty());
    s.set("Y", a);
    CHECK(s.domain() == std::set<std::string>{"Y"});
  }

  SUBCASE("restriction") {
    Substitution s;
    s.set("X", a);
    s.set("Y", b);
    Substitution r = s.restrict_to({"X", "Z"});
    CHECK(r.lookup("X").has_value());
    CHECK(!r.lookup("Y").has_value());
  }

  (void)y;
}

TEST_CASE("complement is an involution") {
  Literal l = parse_literal("~p(a,f(X))");
  CHECK(l.complement().complement() == l);
  CHECK(l.complement().positive);
}

TEST_CASE("inverse substitution replaces maximal range occurrences") {
  // the motivating instance: p(h(f(a),g(f(a)))) with X->f(a), Y->g(f(a))
  Substitution s;
  s.set("X", parse_term("f(a)"));
  s.set("Y", parse_term("g(f(a))"));
  Term t = parse_term("h(f(a),g(f(a)))");
  CHECK(inverse_subst(t, s) == parse_term("h(X,Y)"));

  SUBCASE("identity leaves the term unchanged") {
    Substitution id;
    CHECK(inverse_subst(t, id) == t);
  }

  SUBCASE("all occurrences outside other range terms are replaced") {
    Substitution s2;
    s2.set("X", parse_term("a"));
    Literal l = parse_literal("p(f(a),a)");
    CHECK(inverse_subst(l, s2) == parse_literal("p(f(X),X)"));
  }

  SUBCASE("non-injective substitutions are rejected") {
    Substitution bad;
    bad.set("X", parse_term("a"));
    bad.set("Y", parse_term("a"));
    CHECK_THROWS_AS(inverse_subst(t, bad), LogicError);
  }

  SUBCASE("apply after inverse restores the original") {
    // brute-check on a couple of shapes
    for (const char* txt : {"p(h(f(a),g(f(a))))", "q(f(a),b,g(f(a)))"}) {
      Literal l = parse_literal(txt);
      Literal lifted = inverse_subst(l, s);
      CHECK(s.apply(lifted) == l);
    }
  }
}

TEST_CASE("matching is one-way") {
  Substitution s;
  CHECK(match_literal(parse_literal("p(X,Y)"), parse_literal("p(a,f(b))"), s));
  CHECK(s.apply(Term::var("X")) == parse_term("a"));

  Substitution s2;
  CHECK(!match_literal(parse_literal("p(X,X)"), parse_literal("p(a,b)"), s2));

  Substitution s3;
  CHECK(!match_literal(parse_literal("p(a)"), parse_literal("p(X)"), s3));

  Substitution s4;
  Clause pat{parse_literal("~q(X)"), parse_literal("r(X,Y)")};
  Clause tgt{parse_literal("~q(a)"), parse_literal("r(a,b)")};
  CHECK(match_clause(pat, tgt, s4));
}

TEST_CASE("apply after inverse restores random terms") {
  std::mt19937 rng(123);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int i = 0; i < 300; ++i) {
    Term t = random_ground_term(rng, 3);
    std::vector<Term> subs;
    subterms_of(t, subs);
    Substitution s;
    std::set<Term> used;
    int n = pick(0, 2);
    for (int j = 0; j < n; ++j) {
      Term cand = subs[pick(0, static_cast<int>(subs.size()) - 1)];
      if (!used.insert(cand).second) continue;  // keep the map injective
      s.set("_w" + std::to_string(j), cand);
    }
    Term lifted = inverse_subst(t, s);
    CHECK(s.apply(lifted) == t);
  }
}

TEST_CASE("term ordering and size") {
  CHECK(parse_term("a").size() == 1);
  CHECK(parse_term("f(g(a),b)").size() == 4);
  CHECK(parse_term("f(a)").contains(parse_term("a")));
  CHECK(!parse_term("f(a)").contains(parse_term("b")));
  CHECK(parse_term("f(a)").ground());
  CHECK(!parse_term("f(X)").ground());
}
