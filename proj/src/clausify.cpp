#include "tabipol/clausify.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "tabipol/parse.hpp"

namespace tabipol {

namespace {
using Kind = Formula::Kind;
}

std::string ClausalForm::str() const {
  std::string s;
  for (size_t i = 0; i < clauses.size(); ++i) {
    s += clause_str(clauses[i]);
    if (meta[i])
      s += "   [" + meta[i]->pos.str() + " form " +
           std::to_string(meta[i]->form) + "]";
    s += "\n";
  }
  return s;
}

std::vector<InputClause> make_clause_set(const ClausalForm& red,
                                         const ClausalForm& blue) {
  std::vector<InputClause> out;
  for (size_t i = 0; i < red.clauses.size(); ++i)
    out.push_back({red.clauses[i], Side::Red, red.meta[i]});
  for (size_t i = 0; i < blue.clauses.size(); ++i)
    out.push_back({blue.clauses[i], Side::Blue, blue.meta[i]});
  return out;
}

// ---------------------------------------------------------------------------
// Plain clausification
// ---------------------------------------------------------------------------

namespace {

// Negation normal form with constant folding and on-the-fly renaming of
// bound variables to names unused so far in this run.
struct NnfCtx {
  Namer& namer;
  ClausalForm& out;
  int skolem_counter = 0;
};

Formula nnf(const Formula& f, bool positive, Substitution env,
            std::vector<std::string> universals, NnfCtx& ctx);

Formula nnf_quant(const Formula& f, bool isForall, bool positive,
                  Substitution env, std::vector<std::string>& universals,
                  NnfCtx& ctx) {
  bool universal = (isForall == positive);
  std::string name = f.var();
  if (universal) {
    std::string fresh = ctx.namer.fresh(name);
    env.set(name, Term::var(fresh));
    universals.push_back(fresh);
    Formula body = nnf(f.child(), positive, env, universals, ctx);
    universals.pop_back();
    return body;  // clause variables are implicitly universal
  }
  // existential: inner Skolemization on the variables of the subformula
  std::set<std::string> sub = free_vars(f);
  std::vector<Term> args;
  std::set<std::string> seen;
  for (const auto& v : sub) {
    Term t = env.apply(Term::var(v));
    for (const auto& u : term_vars(t))
      if (std::find(universals.begin(), universals.end(), u) !=
              universals.end() &&
          seen.insert(u).second)
        args.push_back(Term::var(u));
  }
  std::sort(args.begin(), args.end(),
            [](const Term& a, const Term& b) { return a.name() < b.name(); });
  std::string skname =
      ctx.namer.fresh("sk" + std::to_string(ctx.skolem_counter++));
  ctx.out.skolem_funs.insert(skname);
  env.set(name, Term::fun(skname, std::move(args)));
  return nnf(f.child(), positive, env, universals, ctx);
}

Formula nnf(const Formula& f, bool positive, Substitution env,
            std::vector<std::string> universals, NnfCtx& ctx) {
  switch (f.kind()) {
    case Kind::True:
      return positive ? Formula::truth() : Formula::falsity();
    case Kind::False:
      return positive ? Formula::falsity() : Formula::truth();
    case Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(env.apply(a));
      Formula at = Formula::atom(f.pred(), std::move(args));
      return positive ? at : Formula::negation(std::move(at));
    }
    case Kind::Not:
      return nnf(f.child(), !positive, std::move(env), std::move(universals),
                 ctx);
    case Kind::And:
    case Kind::Or: {
      bool conj = f.is(Kind::And) == positive;
      std::vector<Formula> parts;
      for (const auto& p : f.parts()) {
        Formula q = nnf(p, positive, env, universals, ctx);
        if (conj) {
          if (q.is(Kind::False)) return Formula::falsity();
          if (q.is(Kind::True)) continue;
        } else {
          if (q.is(Kind::True)) return Formula::truth();
          if (q.is(Kind::False)) continue;
        }
        parts.push_back(std::move(q));
      }
      return conj ? Formula::conj(std::move(parts))
                  : Formula::disj(std::move(parts));
    }
    case Kind::Forall:
      return nnf_quant(f, true, positive, std::move(env), universals, ctx);
    case Kind::Exists:
      return nnf_quant(f, false, positive, std::move(env), universals, ctx);
    case Kind::ForallRel:
    case Kind::ExistsRel:
      return nnf(derelativize(f), positive, std::move(env),
                 std::move(universals), ctx);
  }
  throw LogicError("unreachable");
}

void distribute(const Formula& f, Clause current, std::vector<Clause>& out);

// f is an NNF matrix over literals, And, Or, True, False.
void clauses_of_matrix(const Formula& f, std::vector<Clause>& out) {
  if (f.is(Kind::True)) return;
  if (f.is(Kind::And)) {
    for (const auto& p : f.parts()) clauses_of_matrix(p, out);
    return;
  }
  distribute(f, {}, out);
}

void distribute(const Formula& f, Clause current, std::vector<Clause>& out) {
  switch (f.kind()) {
    case Kind::False:
      out.push_back(std::move(current));
      return;
    case Kind::Atom:
      current.push_back(Literal(true, f.pred(), f.args()));
      out.push_back(std::move(current));
      return;
    case Kind::Not:
      current.push_back(Literal(false, f.child().pred(), f.child().args()));
      out.push_back(std::move(current));
      return;
    case Kind::Or: {
      // cartesian product over conjunctive parts
      std::vector<Clause> acc{std::move(current)};
      for (const auto& p : f.parts()) {
        std::vector<Clause> next;
        for (const auto& base : acc) {
          std::vector<Clause> sub;
          distribute(p, {}, sub);
          for (const auto& s : sub) {
            Clause merged = base;
            merged.insert(merged.end(), s.begin(), s.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      for (auto& c : acc) out.push_back(std::move(c));
      return;
    }
    case Kind::And: {
      for (const auto& p : f.parts()) distribute(p, current, out);
      return;
    }
    default:
      throw LogicError("distribute: unexpected node in matrix");
  }
}

bool tautological(const Clause& c) {
  for (const auto& l : c)
    for (const auto& m : c)
      if (l.pred == m.pred && l.args == m.args && l.positive != m.positive)
        return true;
  return false;
}

Clause dedup(const Clause& c) {
  Clause out;
  for (const auto& l : c)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

}  // namespace

ClausalForm clausify(const Formula& sentence, Namer& namer) {
  if (!is_sentence(sentence))
    throw LogicError("clausify: input has free variables");
  ClausalForm cf;
  namer.reserve_all(sentence);
  NnfCtx ctx{namer, cf};
  Formula matrix = nnf(sentence, true, {}, {}, ctx);
  std::vector<Clause> raw;
  if (matrix.is(Kind::False)) {
    raw.push_back({});
  } else {
    clauses_of_matrix(matrix, raw);
  }
  std::vector<Clause> cleaned;
  for (const auto& c : raw) {
    Clause d = dedup(c);
    if (tautological(d)) continue;
    if (std::find(cleaned.begin(), cleaned.end(), d) == cleaned.end())
      cleaned.push_back(std::move(d));
  }
  for (auto& c : cleaned) cf.push(std::move(c));
  return cf;
}

// ---------------------------------------------------------------------------
// Relativized-quantifier recognition
// ---------------------------------------------------------------------------

namespace {

void check_relational_atom(const std::string& pred,
                           const std::vector<Term>& args) {
  for (const auto& a : args)
    if (a.is_fun() && !a.args().empty())
      throw NotRelativized("not a relativized formula: non-constant function '" +
                    a.name() + "' in atom " + pred);
}

Formula relativized_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
      check_relational_atom(f.pred(), f.args());
      return Formula::exists_rel({}, f.atom_literal(), Formula::truth());
    case Kind::Not: {
      const Formula& c = f.child();
      if (c.is(Kind::Atom)) {
        check_relational_atom(c.pred(), c.args());
        return Formula::forall_rel({}, c.atom_literal(), Formula::falsity());
      }
      throw NotRelativized("not a relativized formula: negation of " +
                    print_formula(c));
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& p : f.parts()) parts.push_back(relativized_rec(p));
      return f.is(Kind::And) ? Formula::conj(std::move(parts))
                             : Formula::disj(std::move(parts));
    }
    case Kind::Forall:
    case Kind::Exists: {
      bool isAll = f.is(Kind::Forall);
      std::vector<std::string> vars;
      Formula body = f;
      while (body.is(isAll ? Kind::Forall : Kind::Exists)) {
        vars.push_back(body.var());
        body = body.child();
      }
      // universal: body must be ~R | F'; existential: R & F'
      std::vector<Formula> parts;
      if (isAll) {
        if (body.is(Kind::Or))
          parts = body.parts();
        else
          parts = {body};
      } else {
        if (body.is(Kind::And))
          parts = body.parts();
        else
          parts = {body};
      }
      auto guard_of = [&](const Formula& p) -> std::optional<Literal> {
        if (isAll) {
          if (p.is(Kind::Not) && p.child().is(Kind::Atom))
            return p.child().atom_literal();
        } else {
          if (p.is(Kind::Atom)) return p.atom_literal();
        }
        return std::nullopt;
      };
      for (size_t i = 0; i < parts.size(); ++i) {
        auto g = guard_of(parts[i]);
        if (!g) continue;
        std::set<std::string> gv = literal_vars(*g);
        bool all_in = true;
        for (const auto& v : vars)
          if (!gv.count(v)) {
            all_in = false;
            break;
          }
        if (!all_in) continue;
        check_relational_atom(g->pred, g->args);
        std::vector<Formula> rest;
        for (size_t j = 0; j < parts.size(); ++j)
          if (j != i) rest.push_back(parts[j]);
        Formula inner = rest.empty()
                            ? (isAll ? Formula::falsity() : Formula::truth())
                            : (isAll ? Formula::disj(std::move(rest))
                                     : Formula::conj(std::move(rest)));
        Formula sub = relativized_rec(inner);
        return isAll ? Formula::forall_rel(vars, *g, std::move(sub))
                     : Formula::exists_rel(vars, *g, std::move(sub));
      }
      throw NotRelativized(
          "not a relativized formula: quantifier block without a guard "
          "atom covering its variables in " +
          print_formula(f));
    }
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      check_relational_atom(f.guard().pred, f.guard().args);
      Formula sub = relativized_rec(f.child());
      return f.is(Kind::ForallRel)
                 ? Formula::forall_rel(f.rel_vars(), f.guard(), std::move(sub))
                 : Formula::exists_rel(f.rel_vars(), f.guard(),
                                       std::move(sub));
    }
  }
  throw LogicError("unreachable");
}

}  // namespace

Formula to_relativized(const Formula& f) { return relativized_rec(f); }

Formula negate_relativized(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return Formula::falsity();
    case Kind::False:
      return Formula::truth();
    case Kind::And: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(negate_relativized(p));
      return Formula::disj(std::move(ps));
    }
    case Kind::Or: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(negate_relativized(p));
      return Formula::conj(std::move(ps));
    }
    case Kind::ForallRel:
      return Formula::exists_rel(f.rel_vars(), f.guard(),
                                 negate_relativized(f.child()));
    case Kind::ExistsRel:
      return Formula::forall_rel(f.rel_vars(), f.guard(),
                                 negate_relativized(f.child()));
    default:
      throw NotRelativized("negate_relativized: input is not in relativized form");
  }
}

// ---------------------------------------------------------------------------
// Definitional clausification
// ---------------------------------------------------------------------------

namespace {

struct DefBuilder {
  Side side;
  Namer& namer;
  DefClausalForm out;
  std::vector<Formula> defp_rows;

  std::string side_tag() const { return side == Side::Red ? "l" : "r"; }

  std::string definer_name(const std::vector<int>& path) {
    std::string n = "d_" + side_tag();
    for (int i : path) n += "_" + std::to_string(i);
    return namer.fresh(n);
  }

  std::string skolem_name(const std::vector<int>& path, int i) {
    std::string n = "sk_" + side_tag();
    for (int p : path) n += "_" + std::to_string(p);
    n += "_" + std::to_string(i);
    return namer.fresh(n);
  }

  static std::vector<std::string> sorted_vars(const Formula& f) {
    auto fv = free_vars(f);
    return std::vector<std::string>(fv.begin(), fv.end());
  }

  Literal definer_atom(const std::string& name,
                       const std::vector<std::string>& xp) {
    std::vector<Term> args;
    for (const auto& v : xp) args.push_back(Term::var(v));
    return Literal(true, name, std::move(args));
  }

  ClauseMeta meta(const std::vector<int>& path, int form) {
    return ClauseMeta{GlobalPosition{side, path}, form};
  }

  // Returns the definer atom for the subformula, or nullopt when the
  // subformula is true (its definer is elided).
  std::optional<Literal> walk(const Formula& f, std::vector<int> path) {
    if (f.is(Kind::True) && !path.empty()) return std::nullopt;

    DefPosition dp(f.kind());
    dp.pos = GlobalPosition{side, path};
    dp.xp = sorted_vars(f);
    dp.definer = definer_name(path);
    Literal datom = definer_atom(dp.definer, dp.xp);
    out.cf.definer_preds.insert(dp.definer);

    switch (f.kind()) {
      case Kind::True:
        break;  // root only: no row
      case Kind::False:
        out.cf.push({datom.complement()}, meta(path, 2));
        defp_rows.push_back(Formula::negation(Formula::atom(datom)));
        break;
      case Kind::And:
      case Kind::Or: {
        std::vector<std::optional<Literal>> kids;
        bool any_true = false;
        for (size_t i = 0; i < f.parts().size(); ++i) {
          std::vector<int> cp = path;
          cp.push_back(static_cast<int>(i) + 1);
          auto k = walk(f.parts()[i], cp);
          if (!k) any_true = true;
          kids.push_back(k);
        }
        if (f.is(Kind::And)) {
          std::vector<Formula> row_parts;
          for (size_t i = 0; i < kids.size(); ++i) {
            if (!kids[i]) continue;
            int form = i == 0 ? 3 : 4;
            Clause c{datom.complement(), *kids[i]};
            check_restriction(c, form);
            out.cf.push(std::move(c), meta(path, form));
            row_parts.push_back(Formula::atom(*kids[i]));
          }
          if (!row_parts.empty())
            defp_rows.push_back(closure(
                dp.xp, Formula::disj({Formula::negation(Formula::atom(datom)),
                                      Formula::conj(std::move(row_parts))})));
        } else {
          if (!any_true) {
            Clause c{datom.complement()};
            std::vector<Formula> row_parts;
            for (const auto& k : kids) {
              c.push_back(*k);
              row_parts.push_back(Formula::atom(*k));
            }
            check_restriction(c, 5);
            out.cf.push(std::move(c), meta(path, 5));
            defp_rows.push_back(closure(
                dp.xp, Formula::disj({Formula::negation(Formula::atom(datom)),
                                      Formula::disj(std::move(row_parts))})));
          }
        }
        break;
      }
      case Kind::ForallRel: {
        dp.guard = f.guard();
        dp.vp = f.rel_vars();
        std::vector<int> cp = path;
        cp.push_back(1);
        auto k = walk(f.child(), cp);
        if (k) {
          Clause c{datom.complement(), dp.guard->complement(), *k};
          check_restriction(c, 6);
          out.cf.push(std::move(c), meta(path, 6));
          defp_rows.push_back(closure(
              dp.xp,
              Formula::disj({Formula::negation(Formula::atom(datom)),
                             Formula::forall_rel(dp.vp, *dp.guard,
                                                 Formula::atom(*k))})));
        }
        break;
      }
      case Kind::ExistsRel: {
        dp.guard = f.guard();
        dp.vp = f.rel_vars();
        std::vector<Term> xargs;
        for (const auto& v : dp.xp) xargs.push_back(Term::var(v));
        int i = 1;
        for (const auto& v : dp.vp) {
          std::string sk = skolem_name(path, i++);
          out.cf.skolem_funs.insert(sk);
          dp.sigma.set(v, Term::fun(sk, xargs));
        }
        std::vector<int> cp = path;
        cp.push_back(1);
        auto k = walk(f.child(), cp);
        Literal gsk = dp.sigma.apply(*dp.guard);
        dp.guard_sk = gsk;
        {
          Clause c{datom.complement(), gsk};
          check_restriction(c, 7);
          out.cf.push(std::move(c), meta(path, 7));
        }
        if (k) {
          Literal ksk = dp.sigma.apply(*k);
          dp.child_sk = ksk;
          Clause c{datom.complement(), ksk};
          check_restriction(c, 8);
          out.cf.push(std::move(c), meta(path, 8));
        }
        defp_rows.push_back(closure(
            dp.xp,
            Formula::disj(
                {Formula::negation(Formula::atom(datom)),
                 Formula::exists_rel(dp.vp, *dp.guard,
                                     k ? Formula::atom(*k)
                                       : Formula::truth())})));
        break;
      }
      default:
        throw NotRelativized("definitional clausification: input not relativized");
    }
    out.positions.emplace(path, std::move(dp));
    return datom;
  }

  static Formula closure(const std::vector<std::string>& vars, Formula f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      f = Formula::forall(*it, std::move(f));
    return f;
  }

  // Restrictions on arguments of atoms and free variables per clause form.
  static void check_restriction(const Clause& c, int form) {
    auto pargs = [](const Literal& l) {
      return std::set<Term>(l.args.begin(), l.args.end());
    };
    auto subset = [](const std::set<Term>& a, const std::set<Term>& b) {
      for (const auto& t : a)
        if (!b.count(t)) return false;
      return true;
    };
    switch (form) {
      case 3:
      case 4:
      case 5: {
        std::set<Term> head = pargs(c[0]);
        for (size_t i = 1; i < c.size(); ++i)
          if (!subset(pargs(c[i]), head))
            throw LogicError("definitional clause violates restriction " +
                             std::to_string(form) + ": " + clause_str(c));
        break;
      }
      case 6: {
        std::set<Term> dr = pargs(c[0]);
        std::set<Term> with_guard = dr;
        for (const auto& t : c[1].args) with_guard.insert(t);
        if (!subset(pargs(c[2]), with_guard))
          throw LogicError("definitional clause violates restriction 6: " +
                           clause_str(c));
        break;
      }
      case 7:
      case 8: {
        std::set<Term> head;
        for (const auto& t : c[0].args) head.insert(t);
        for (const auto& v : literal_vars(c[1]))
          if (!head.count(Term::var(v)))
            throw LogicError("definitional clause violates restriction " +
                             std::to_string(form) + ": " + clause_str(c));
        break;
      }
      default:
        break;
    }
  }
};

}  // namespace

DefClausalForm definitional_clausify(const Formula& relativized_sentence,
                                          Side side, Namer& namer) {
  if (!is_sentence(relativized_sentence))
    throw LogicError("definitional clausification: input has free variables");
  namer.reserve_all(relativized_sentence);
  DefBuilder b{side, namer, {}, {}};
  b.out.cf.side = side;
  // Root unit clause first, then the rows in position order.
  auto root_atom_opt = [&]() -> Literal {
    if (relativized_sentence.is(Kind::True)) {
      DefPosition dp(Kind::True);
      dp.pos = GlobalPosition{side, {}};
      dp.definer = b.definer_name({});
      b.out.cf.definer_preds.insert(dp.definer);
      Literal a = b.definer_atom(dp.definer, {});
      b.out.positions.emplace(std::vector<int>{}, std::move(dp));
      return a;
    }
    return *b.walk(relativized_sentence, {});
  }();
  // Insert the root unit at the front.
  b.out.cf.clauses.insert(b.out.cf.clauses.begin(), Clause{root_atom_opt});
  b.out.cf.meta.insert(b.out.cf.meta.begin(),
                       ClauseMeta{GlobalPosition{side, {}}, 1});
  std::vector<Formula> rows{Formula::atom(root_atom_opt)};
  for (auto& r : b.defp_rows) rows.push_back(std::move(r));
  b.out.defp = Formula::conj(std::move(rows));
  return std::move(b.out);
}

// ---------------------------------------------------------------------------
// Equality axioms
// ---------------------------------------------------------------------------

namespace {

bool mentions_eq(const ClausalForm& cf) {
  for (const auto& c : cf.clauses)
    for (const auto& l : c)
      if (l.pred == kEqualityPred && l.args.size() == 2) return true;
  return false;
}

void collect_symbols(const ClausalForm& cf,
                     std::map<std::string, size_t>& preds,
                     std::map<std::string, size_t>& funs) {
  std::function<void(const Term&)> scan_term = [&](const Term& t) {
    if (t.is_fun()) {
      funs.try_emplace(t.name(), t.args().size());
      for (const auto& a : t.args()) scan_term(a);
    }
  };
  for (const auto& c : cf.clauses)
    for (const auto& l : c) {
      if (l.pred != kEqualityPred) preds.try_emplace(l.pred, l.args.size());
      for (const auto& a : l.args) scan_term(a);
    }
}

Literal eq_lit(bool pos, Term a, Term b) {
  return Literal(pos, kEqualityPred, {std::move(a), std::move(b)});
}

void push_unique(ClausalForm& cf, Clause c) {
  if (std::find(cf.clauses.begin(), cf.clauses.end(), c) == cf.clauses.end())
    cf.push(std::move(c));
}

void add_substitutivity(ClausalForm& cf,
                        const std::map<std::string, size_t>& preds,
                        const std::map<std::string, size_t>& funs) {
  Term x = Term::var("X"), y = Term::var("Y");
  for (const auto& [p, n] : preds) {
    for (size_t i = 0; i < n; ++i) {
      std::vector<Term> before, after;
      for (size_t j = 0; j < n; ++j) {
        Term z = Term::var("Z" + std::to_string(j + 1));
        before.push_back(j == i ? x : z);
        after.push_back(j == i ? y : z);
      }
      push_unique(cf, {eq_lit(false, x, y), Literal(false, p, before),
                       Literal(true, p, after)});
    }
  }
  for (const auto& [f, n] : funs) {
    if (n == 0) continue;
    for (size_t i = 0; i < n; ++i) {
      std::vector<Term> before, after;
      for (size_t j = 0; j < n; ++j) {
        Term z = Term::var("Z" + std::to_string(j + 1));
        before.push_back(j == i ? x : z);
        after.push_back(j == i ? y : z);
      }
      push_unique(cf, {eq_lit(false, x, y),
                       eq_lit(true, Term::fun(f, before), Term::fun(f, after))});
    }
  }
}

}  // namespace

std::pair<ClausalForm, ClausalForm> add_equality_axioms(ClausalForm red,
                                                        ClausalForm blue) {
  if (!mentions_eq(red) && !mentions_eq(blue)) return {red, blue};

  std::map<std::string, size_t> redPreds, redFuns, bluePreds, blueFuns;
  collect_symbols(red, redPreds, redFuns);
  collect_symbols(blue, bluePreds, blueFuns);

  Term x = Term::var("X"), y = Term::var("Y"), z = Term::var("Z");
  for (ClausalForm* cf : {&red, &blue}) {
    push_unique(*cf, {eq_lit(true, x, x)});
    push_unique(*cf, {eq_lit(false, x, y), eq_lit(true, y, x)});
    push_unique(*cf,
                {eq_lit(false, x, y), eq_lit(false, y, z), eq_lit(true, x, z)});
  }
  add_substitutivity(red, redPreds, redFuns);
  add_substitutivity(blue, bluePreds, blueFuns);
  return {red, blue};
}

}  // namespace tabipol
