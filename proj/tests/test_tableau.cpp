#include <doctest.h>

#include "fixtures.hpp"
#include "tabipol/tableau.hpp"
#include "tabipol/tableau_json.hpp"

using namespace tabipol;

TEST_CASE("clause_of reads the children labels in order") {
  Tableau t;
  int a = t.add_child(t.root(), parse_literal("p"), Side::Red);
  t.add_child(a, parse_literal("~p"), Side::Red);
  t.add_child(a, parse_literal("q"), Side::Red);
  CHECK(t.clause_of(a) == Clause{parse_literal("~p"), parse_literal("q")});
  CHECK(t.clause_of(t.root()) == Clause{parse_literal("p")});
  CHECK_THROWS_AS(t.clause_of(t.node(a).children[0]), LogicError);
}

TEST_CASE("closure and target assignment") {
  Tableau t;
  int p = t.add_child(t.root(), parse_literal("p"));
  int np = t.add_child(p, parse_literal("~p"));
  t = assign_targets(std::move(t));
  CHECK(is_closed(t));
  CHECK(t.node(np).tgt == p);
  // idempotent
  Tableau u = assign_targets(t);
  CHECK(is_closed(u));
  CHECK(u.node(np).tgt == p);

  SUBCASE("open leaf") {
    Tableau v;
    v.add_child(v.root(), parse_literal("q"));
    v = assign_targets(std::move(v));
    CHECK(!is_closed(v));
  }

  SUBCASE("nearest ancestor wins") {
    Tableau v;
    int a = v.add_child(v.root(), parse_literal("p"));
    int b = v.add_child(a, parse_literal("q"));
    int c = v.add_child(b, parse_literal("p"));
    int d = v.add_child(c, parse_literal("~p"));
    v = assign_targets(std::move(v));
    CHECK(v.node(d).tgt == c);
  }
}

TEST_CASE("structural properties") {
  Tableau hyper = fixtures::hyper_example();
  CHECK(is_closed(hyper));
  CHECK(check_regular(hyper).ok);
  CHECK(is_positive_hyper(hyper));
  CHECK(check_eager(hyper).ok);
  CHECK(check_leaf_only(hyper, negative_labels(hyper)).ok);

  Tableau conn = fixtures::conn1_stage(1);
  CHECK(is_closed(conn));
  CHECK(check_regular(conn).ok);
  CHECK(!is_positive_hyper(conn));  // negative labels at inner nodes

  SUBCASE("duplicate label on a branch fails regularity") {
    Tableau t;
    int a = t.add_child(t.root(), parse_literal("p"));
    int b = t.add_child(a, parse_literal("q"));
    t.add_child(b, parse_literal("p"));
    CHECK(!check_regular(t).ok);
  }

  SUBCASE("contiguity") {
    // conn1 stage 4 is leaf-only but the guard/definer pair is separated
    Tableau s4 = fixtures::conn1_stage(4);
    std::vector<std::pair<Literal, Literal>> pair{
        {parse_literal("r(sk_r_1)"), parse_literal("d_r_1(sk_r_1)")}};
    CHECK(!check_contiguous(s4, pair).ok);
    CHECK(check_contiguous(fixtures::hyper_example(), pair).ok);
  }

  SUBCASE("root-only tableau is vacuously a forward-chaining shape") {
    Tableau t;
    CHECK(is_positive_hyper(t));
  }
}

TEST_CASE("branch literals are monotone along edges") {
  Tableau t = fixtures::hyper_example();
  for (int id : t.pre_order()) {
    if (id == t.root()) continue;
    const TabNode& n = t.node(id);
    auto parent_red = t.branch_literals(n.parent, Side::Red);
    auto here_red = t.branch_literals(id, Side::Red);
    if (n.side == Side::Red) {
      REQUIRE(here_red.size() == parent_red.size() + 1);
      CHECK(here_red.back() == *n.lit);
    } else {
      CHECK(here_red == parent_red);
    }
  }
}

TEST_CASE("grounding instantiates every free variable") {
  Tableau t;
  int a = t.add_child(t.root(), parse_literal("p(X)"), Side::Red);
  t.add_child(a, parse_literal("~p(X)"), Side::Blue);
  SUBCASE("uniformly with the fresh constant") {
    Tableau g = ground_tableau(t, "k");
    CHECK(*g.node(a).lit == parse_literal("p(k)"));
    CHECK(is_closed(g));
  }
  SUBCASE("per-variable override") {
    Tableau g = ground_tableau(t, "k", {{"X", parse_term("a")}});
    CHECK(*g.node(a).lit == parse_literal("p(a)"));
  }
  SUBCASE("already ground stays untouched") {
    Tableau g0 = ground_tableau(fixtures::hyper_example(), "k");
    CHECK(equal_modulo_child_order(g0, fixtures::hyper_example()));
  }
  SUBCASE("shape, sides and clause relation survive grounding") {
    Tableau g = ground_tableau(t, "k");
    CHECK(g.node_count() == t.node_count());
    CHECK(g.node(a).side == Side::Red);
    std::vector<InputClause> inputs{{{parse_literal("p(X)")}, Side::Red, {}},
                                    {{parse_literal("~p(X)")}, Side::Blue, {}}};
    CHECK(check_tableau_for(g, inputs).ok);
  }
}

TEST_CASE("side assignment by matching") {
  std::vector<InputClause> inputs{
      {{parse_literal("p(X)")}, Side::Red, {}},
      {{parse_literal("~p(X)"), parse_literal("q")}, Side::Blue, {}},
  };
  Tableau t;
  int a = t.add_child(t.root(), parse_literal("p(k)"));
  int b = t.add_child(a, parse_literal("~p(k)"));
  int c = t.add_child(a, parse_literal("q"));
  Tableau s = assign_sides(t, inputs);
  CHECK(s.node(a).side == Side::Red);
  CHECK(s.node(b).side == Side::Blue);
  CHECK(s.node(c).side == Side::Blue);

  SUBCASE("ambiguous clauses follow the policy") {
    std::vector<InputClause> both{
        {{parse_literal("p(X)")}, Side::Red, {}},
        {{parse_literal("p(X)")}, Side::Blue, {}},
        {{parse_literal("~p(X)")}, Side::Blue, {}},
    };
    Tableau u;
    int x = u.add_child(u.root(), parse_literal("p(k)"));
    u.add_child(x, parse_literal("~p(k)"));
    CHECK(assign_sides(u, both, SidePolicy::PreferRed).node(x).side ==
          Side::Red);
    CHECK(assign_sides(u, both, SidePolicy::PreferBlue).node(x).side ==
          Side::Blue);
  }

  SUBCASE("foreign clauses are reported") {
    Tableau u;
    u.add_child(u.root(), parse_literal("z"));
    CHECK_THROWS_AS(assign_sides(u, inputs), LogicError);
  }
}

TEST_CASE("wire format round trip") {
  Tableau t = fixtures::hyper_example();
  std::string text = print_tableau(t);
  Tableau u = parse_tableau(text);
  CHECK(print_tableau(u) == text);
  CHECK(equal_modulo_child_order(t, u));

  SUBCASE("two-node example") {
    Tableau v = parse_tableau(
        R"({"children":[{"lit":"p","children":[{"lit":"~p"}]}]})");
    CHECK(is_closed(v));
    CHECK(v.node_count() == 3);
  }

  SUBCASE("missing lit on a non-root node") {
    CHECK_THROWS_AS(parse_tableau(R"({"children":[{"children":[]}]})"),
                    LogicError);
  }

  SUBCASE("unknown side tag") {
    CHECK_THROWS_AS(
        parse_tableau(R"({"children":[{"lit":"p","side":"green"}]})"),
        LogicError);
  }

  SUBCASE("hand-count of the forward-chaining example") {
    CHECK(t.node_count() == 16);  // root plus 15 labeled nodes
  }
}
