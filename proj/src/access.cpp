#include "tabipol/access.hpp"

#include <algorithm>
#include <functional>

#include "tabipol/parse.hpp"
#include "tabipol/transforms.hpp"

namespace tabipol {

namespace {
using Kind = Formula::Kind;
}

std::string BindingPattern::str() const {
  std::string s = existential ? "<+," : "<-,";
  s += pred + ",{";
  bool first = true;
  for (int i : inputs) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i);
  }
  return s + "}>";
}

namespace {

void bpp_rec(const Formula& f, std::set<BindingPattern>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) bpp_rec(p, out);
      return;
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      BindingPattern b;
      b.existential = f.is(Kind::ExistsRel);
      Literal g = f.guard();
      b.pred = g.pred;
      std::set<std::string> vs(f.rel_vars().begin(), f.rel_vars().end());
      for (size_t i = 0; i < g.args.size(); ++i) {
        const Term& t = g.args[i];
        if (!(t.is_var() && vs.count(t.name())))
          b.inputs.insert(static_cast<int>(i) + 1);
      }
      out.insert(std::move(b));
      bpp_rec(f.child(), out);
      return;
    }
    default:
      throw NotRelativized("binding patterns: formula is not in relativized form");
  }
}

}  // namespace

std::set<BindingPattern> binding_patterns(const Formula& relativized) {
  std::set<BindingPattern> out;
  bpp_rec(relativized, out);
  return out;
}

bool covered(const BindingPattern& b, const BindingPattern& c) {
  if (b.existential != c.existential || b.pred != c.pred) return false;
  for (int i : c.inputs)
    if (!b.inputs.count(i)) return false;
  return true;
}

bool covered(const std::set<BindingPattern>& bs,
             const std::set<BindingPattern>& cs) {
  for (const auto& b : bs) {
    bool ok = false;
    for (const auto& c : cs)
      if (covered(b, c)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

AciContext make_aci_context(const Formula& f, const Formula& g, Namer& namer) {
  AciContext ctx;
  namer.reserve_all(f);
  namer.reserve_all(g);
  ctx.f = to_relativized(f);
  ctx.g = to_relativized(g);
  ctx.left = definitional_clausify(ctx.f, Side::Red, namer);
  ctx.right =
      definitional_clausify(negate_relativized(ctx.g), Side::Blue, namer);
  ctx.garg_left = garg(ctx.left.defp);
  ctx.garg_right = garg(ctx.right.defp);
  return ctx;
}

std::vector<std::pair<Literal, Literal>> contiguity_pairs(
    const Tableau& t, const AciContext& ctx) {
  std::set<Literal> labels = t.labels();
  std::set<std::pair<Literal, Literal>> pairs;
  for (Side s : {Side::Red, Side::Blue}) {
    for (const auto& [path, dp] : ctx.side(s).positions) {
      if (!dp.guard_sk || !dp.child_sk) continue;
      for (const auto& l : labels) {
        if (!l.positive) continue;
        Substitution mu;
        if (!match_literal(*dp.guard_sk, l, mu)) continue;
        Literal partner = mu.apply(*dp.child_sk);
        if (!labels.count(partner)) continue;
        Literal a = l, b = partner;
        if (b < a) std::swap(a, b);
        pairs.insert({a, b});
      }
    }
  }
  return std::vector<std::pair<Literal, Literal>>(pairs.begin(), pairs.end());
}

Tableau attach_clause_meta(Tableau t, const AciContext& ctx) {
  std::vector<InputClause> inputs =
      make_clause_set(ctx.left.cf, ctx.right.cf);
  for (int id : t.pre_order()) {
    if (t.is_leaf(id) || t.node(id).empty_clause) continue;
    Clause c = t.clause_of(id);
    bool found = false;
    for (const auto& in : inputs) {
      Substitution s;
      if (match_clause(in.clause, c, s)) {
        for (int k : t.node(id).children) {
          t.node_mut(k).side = in.side;
          t.node_mut(k).meta = in.meta;
        }
        found = true;
        break;
      }
    }
    if (!found)
      throw LogicError(
          "tableau clause is not an instance of a definitional clause: " +
          clause_str(c));
  }
  return t;
}

namespace {

std::set<Term> literal_gargs(const Literal& l) {
  std::set<Term> out;
  for (const auto& a : l.args)
    if (a.ground()) out.insert(a);
  return out;
}

std::set<Term> branch_gargs(const Tableau& t, int id, Side s) {
  std::set<Term> out;
  for (const auto& l : t.branch_literals(id, s))
    for (const auto& g : literal_gargs(l)) out.insert(g);
  return out;
}

// Which context position owns this Skolem function name, if any.
struct SkolemOrigin {
  Side side;
  const DefPosition* pos;
  std::string var;  // the quantified variable the function stands for
};

std::map<std::string, SkolemOrigin> skolem_origins(const AciContext& ctx) {
  std::map<std::string, SkolemOrigin> out;
  for (Side s : {Side::Red, Side::Blue})
    for (const auto& [path, dp] : ctx.side(s).positions)
      for (const auto& [v, term] : dp.sigma.bindings())
        out.emplace(term.name(), SkolemOrigin{s, &dp, v});
  return out;
}

}  // namespace

TableauDiagnostics check_aci(const Tableau& t, const AciContext& ctx) {
  TableauDiagnostics d;
  Tableau u;
  try {
    u = attach_clause_meta(t, ctx);
  } catch (const LogicError& e) {
    d.fail("provenance", t.root(), e.what());
    return d;
  }
  u = assign_targets(std::move(u));

  for (int id : u.pre_order()) {
    const TabNode& n = u.node(id);
    if (n.lit && !n.lit->ground())
      d.fail("ground", id, "non-ground label " + n.lit->str());
  }
  if (!is_closed(u)) d.fail("closed", u.root(), "open leaf present");
  TableauDiagnostics reg = check_regular(u);
  TableauDiagnostics lo = check_leaf_only(u, negative_labels(u));
  TableauDiagnostics ct = check_contiguous(u, contiguity_pairs(u, ctx));
  for (auto* sub : {&reg, &lo, &ct})
    for (auto& v : sub->violations) {
      d.ok = false;
      d.violations.push_back(v);
    }

  // Introducer precedence: a Skolem-headed ground argument of a label must
  // have an introducer literal at the node or above it.
  std::map<std::string, SkolemOrigin> origins = skolem_origins(ctx);
  for (int id : u.pre_order()) {
    const TabNode& n = u.node(id);
    if (!n.lit) continue;
    for (const auto& g : literal_gargs(*n.lit)) {
      if (!g.is_fun()) continue;
      auto it = origins.find(g.name());
      if (it == origins.end()) continue;
      const DefPosition& dp = *it->second.pos;
      // recover the instantiation from the skolem term's arguments
      Substitution mu;
      Term pattern = *dp.sigma.lookup(it->second.var);
      if (!match_term(pattern, g, mu)) continue;
      std::vector<Literal> intro;
      if (dp.guard_sk) intro.push_back(mu.apply(*dp.guard_sk));
      if (dp.child_sk) intro.push_back(mu.apply(*dp.child_sk));
      bool found = false;
      for (int cur = id; cur >= 0 && !found; cur = u.node(cur).parent) {
        const TabNode& c = u.node(cur);
        if (!c.lit) break;
        for (const auto& l : intro)
          if (*c.lit == l) found = true;
      }
      if (!found)
        d.fail("introducer", id,
               "no introducer above for ground term " + g.str());
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

namespace {

// Argument-position replacement of ground terms by variables, applied to
// every atom of a formula including quantifier guards.
Term replace_arg(const Term& a, const Substitution& theta) {
  for (const auto& [v, t] : theta.bindings())
    if (t == a) return Term::var(v);
  return a;
}

Literal replace_args(const Literal& l, const Substitution& theta) {
  Literal out = l;
  for (auto& a : out.args) a = replace_arg(a, theta);
  return out;
}

Formula replace_args(const Formula& f, const Substitution& theta) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(replace_arg(a, theta));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Kind::Not:
      return Formula::negation(replace_args(f.child(), theta));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(replace_args(p, theta));
      return f.is(Kind::And) ? Formula::conj(std::move(ps))
                             : Formula::disj(std::move(ps));
    }
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      Literal g = replace_args(f.guard(), theta);
      Formula body = replace_args(f.child(), theta);
      return f.is(Kind::ForallRel)
                 ? Formula::forall_rel(f.rel_vars(), std::move(g),
                                       std::move(body))
                 : Formula::exists_rel(f.rel_vars(), std::move(g),
                                       std::move(body));
    }
    default:
      throw LogicError("replace_args: unexpected quantifier");
  }
}

struct Extractor {
  const Tableau& t;
  const AciContext& ctx;
  Namer& namer;

  const DefPosition& position_of(const ClauseMeta& m) const {
    return ctx.side(m.pos.side).positions.at(m.pos.path);
  }

  Formula extract(int id) {
    if (t.is_leaf(id))
      throw LogicError("aipol: extraction reached a leaf; tableau is not in "
                       "the required shape");
    const std::vector<int>& kids = t.node(id).children;
    const TabNode& first = t.node(kids[0]);
    if (!first.meta || !first.side)
      throw LogicError("aipol: clause without side or form metadata");
    int form = first.meta->form;
    Side cs = *first.side;

    switch (form) {
      case 1:
        return extract(kids[0]);
      case 2:
        return cs == Side::Red ? Formula::falsity() : Formula::truth();
      case 3:
      case 4:
      case 5:
      case 7:
      case 8: {
        std::vector<Formula> parts;
        for (size_t i = 1; i < kids.size(); ++i)
          parts.push_back(extract(kids[i]));
        return cs == Side::Red ? Formula::disj(std::move(parts))
                               : Formula::conj(std::move(parts));
      }
      case 6: {
        if (kids.size() != 3)
          throw LogicError("aipol: malformed guard clause");
        int n2 = kids[1], n3 = kids[2];
        const TabNode& guard_node = t.node(n2);
        if (!guard_node.tgt)
          throw LogicError("aipol: guard literal without a closing ancestor");
        std::optional<Side> ts = t.node(*guard_node.tgt).side;
        if (!ts) throw LogicError("aipol: target without side");
        if (*ts == cs) return extract(n3);

        Literal r_instance = guard_node.lit->complement();  // positive atom
        std::set<Term> r_gargs = literal_gargs(*guard_node.lit);
        bool universal = cs == Side::Red;
        std::set<Term> base = universal ? ctx.garg_left : ctx.garg_right;
        for (const auto& g :
             branch_gargs(t, id, universal ? Side::Red : Side::Blue))
          base.insert(g);
        std::vector<Term> ts_list;
        for (const auto& g : r_gargs)
          if (!base.count(g)) ts_list.push_back(g);
        std::stable_sort(ts_list.begin(), ts_list.end(),
                         [](const Term& a, const Term& b) {
                           if (a.size() != b.size()) return a.size() < b.size();
                           return a.str() < b.str();
                         });
        Substitution theta;
        std::vector<std::string> vars;
        for (const auto& term : ts_list) {
          std::string v = namer.fresh_var();
          theta.set(v, term);
          vars.push_back(v);
        }
        check_theta_discipline(*first.meta, r_instance, theta);

        Formula body = extract(n3);
        Literal guard2 = replace_args(r_instance, theta);
        Formula body2 = replace_args(body, theta);
        return universal
                   ? Formula::forall_rel(vars, std::move(guard2),
                                         std::move(body2))
                   : Formula::exists_rel(vars, std::move(guard2),
                                         std::move(body2));
      }
      default:
        throw LogicError("aipol: unknown clause form " + std::to_string(form));
    }
  }

  // Every replaced term must occur in the guard only at output positions,
  // the positions quantified in the source formula.
  void check_theta_discipline(const ClauseMeta& m, const Literal& r_instance,
                              const Substitution& theta) const {
    const DefPosition& dp = position_of(m);
    if (!dp.guard) return;
    std::set<std::string> vp(dp.vp.begin(), dp.vp.end());
    for (size_t j = 0; j < r_instance.args.size(); ++j) {
      const Term& arg = r_instance.args[j];
      bool replaced = false;
      for (const auto& [v, term] : theta.bindings())
        if (term == arg) replaced = true;
      if (!replaced) continue;
      const Term& pattern_arg = dp.guard->args.at(j);
      if (!(pattern_arg.is_var() && vp.count(pattern_arg.name())))
        throw LogicError(
            "aipol: replaced term occurs at an input position of guard " +
            dp.guard->str());
    }
  }
};

}  // namespace

Formula aipol(const Tableau& t, const AciContext& ctx, Namer& namer) {
  TableauDiagnostics d = check_aci(t, ctx);
  if (!d.ok)
    throw LogicError("aipol: tableau is not in the required shape:\n" +
                     d.str());
  Tableau u = attach_clause_meta(t, ctx);
  u = assign_targets(std::move(u));
  Extractor ex{u, ctx, namer};
  Formula h = ex.extract(u.root());
  to_relativized(h);  // the extraction must stay inside the relativized fragment
  return h;
}

Formula aipol_at(const Tableau& t, const AciContext& ctx, Namer& namer,
                 int node) {
  Tableau u = attach_clause_meta(t, ctx);
  u = assign_targets(std::move(u));
  Extractor ex{u, ctx, namer};
  return ex.extract(node);
}

// ---------------------------------------------------------------------------
// Pipeline and verification
// ---------------------------------------------------------------------------

InterpolationResult access_interpolate(const Formula& f, const Formula& g,
                                       const InterpolateOptions& opts) {
  if (!is_sentence(f) || !is_sentence(g))
    throw LogicError("access interpolation: inputs must be sentences");
  Namer namer;
  AciContext ctx = make_aci_context(f, g, namer);
  std::vector<InputClause> cs = make_clause_set(ctx.left.cf, ctx.right.cf);

  ProveResult pr = opts.prover == InterpolateOptions::Prover::Hyper
                       ? prove_hyper(cs, opts.budget)
                       : prove_connection(cs, GoalPolicy::NegativeClauses,
                                          opts.budget);
  if (!pr.proved())
    throw ProverGaveUp(
        "no proof found within the budget (the entailment may still hold)");

  Tableau t = *pr.tableau;
  std::string k = namer.fresh("k");
  t = ground_tableau(t, k, {});
  t = attach_clause_meta(std::move(t), ctx);
  t = to_aci(std::move(t), ctx);
  t = attach_clause_meta(std::move(t), ctx);
  t = assign_targets(std::move(t));

  Formula h = aipol(t, ctx, namer);
  InterpolationResult res{h, std::move(t), std::nullopt, {}};
  if (opts.verify)
    res.verification = verify_access(f, g, h, opts.verify_budget);
  return res;
}

VerificationReport verify_access(const Formula& f, const Formula& g,
                                 const Formula& h, const ProofBudget& budget) {
  Formula rf = to_relativized(f), rg = to_relativized(g), rh = to_relativized(h);
  VerificationReport r;

  Vocabulary vf = vocabulary(rf), vg = vocabulary(rg), vh = vocabulary(rh);
  for (const auto& p : vh.preds)
    if (!vf.preds.count(p) || !vg.preds.count(p)) {
      r.preds_ok = false;
      r.notes.push_back("predicate " + p.first + "/" + (p.second ? "+" : "-") +
                        " not shared by both inputs");
    }

  std::set<BindingPattern> bh = binding_patterns(rh);
  std::set<BindingPattern> bf = binding_patterns(rf);
  std::set<BindingPattern> bg = binding_patterns(rg);
  auto split = [](const std::set<BindingPattern>& b, bool ex) {
    std::set<BindingPattern> out;
    for (const auto& p : b)
      if (p.existential == ex) out.insert(p);
    return out;
  };
  r.existential_patterns_ok = covered(split(bh, true), split(bg, true));
  r.universal_patterns_ok = covered(split(bh, false), split(bf, false));
  if (!*r.existential_patterns_ok)
    r.notes.push_back("an existential binding pattern is not covered");
  if (!*r.universal_patterns_ok)
    r.notes.push_back("a universal binding pattern is not covered");

  bool consts = true;
  for (const auto& c : vh.consts)
    if (!vf.consts.count(c) || !vg.consts.count(c)) consts = false;
  r.consts_ok = consts;
  if (!consts) r.notes.push_back("a constant is not shared by both inputs");

  r.left_entailment = entails(derelativize(f), derelativize(h), budget);
  r.right_entailment = entails(derelativize(h), derelativize(g), budget);
  return r;
}

}  // namespace tabipol
