#include "tabipol/interpolate.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "tabipol/parse.hpp"

namespace tabipol {

namespace {
using Kind = Formula::Kind;
}

bool VerificationReport::passed() const {
  if (left_entailment && *left_entailment != Entailment::Yes) return false;
  if (right_entailment && *right_entailment != Entailment::Yes) return false;
  if (!preds_ok || !funs_ok) return false;
  if (existential_patterns_ok && !*existential_patterns_ok) return false;
  if (universal_patterns_ok && !*universal_patterns_ok) return false;
  if (consts_ok && !*consts_ok) return false;
  return true;
}

std::string VerificationReport::str() const {
  auto ent = [](const std::optional<Entailment>& e) {
    if (!e) return "skipped";
    return *e == Entailment::Yes ? "yes" : "unknown";
  };
  std::string s;
  s += std::string("left entailment: ") + ent(left_entailment) + "\n";
  s += std::string("right entailment: ") + ent(right_entailment) + "\n";
  s += std::string("predicates with polarity: ") + (preds_ok ? "ok" : "FAIL") +
       "\n";
  s += std::string("functions: ") + (funs_ok ? "ok" : "FAIL") + "\n";
  if (existential_patterns_ok)
    s += std::string("existential binding patterns: ") +
         (*existential_patterns_ok ? "ok" : "FAIL") + "\n";
  if (universal_patterns_ok)
    s += std::string("universal binding patterns: ") +
         (*universal_patterns_ok ? "ok" : "FAIL") + "\n";
  if (consts_ok)
    s += std::string("constants: ") + (*consts_ok ? "ok" : "FAIL") + "\n";
  for (const auto& n : notes) s += n + "\n";
  s += passed() ? "verdict: PASS" : "verdict: FAIL";
  return s;
}

// ---------------------------------------------------------------------------
// Ground extraction
// ---------------------------------------------------------------------------

namespace {

Formula literal_formula(const Literal& l) {
  Formula a = Formula::atom(l.pred, l.args);
  return l.positive ? a : Formula::negation(std::move(a));
}

Formula ipol_rec(const Tableau& t, int id) {
  const TabNode& n = t.node(id);
  if (t.is_leaf(id)) {
    if (!n.lit || !n.side) throw LogicError("ipol: unlabeled leaf");
    if (!n.tgt) throw LogicError("ipol: open leaf " + n.lit->str());
    std::optional<Side> ts = t.node(*n.tgt).side;
    if (!ts) throw LogicError("ipol: target without side");
    if (*n.side == Side::Red)
      return *ts == Side::Red ? Formula::falsity() : literal_formula(*n.lit);
    return *ts == Side::Red ? literal_formula(n.lit->complement())
                            : Formula::truth();
  }
  std::optional<Side> cs = n.empty_clause;
  if (!cs) cs = t.node(n.children[0]).side;
  if (!cs) throw LogicError("ipol: child without side");
  std::vector<Formula> parts;
  for (int c : n.children) parts.push_back(ipol_rec(t, c));
  Formula joined = *cs == Side::Red ? Formula::disj(std::move(parts))
                                    : Formula::conj(std::move(parts));
  return fold_constants(joined);
}

}  // namespace

Formula ipol_ground(const Tableau& t) {
  for (int id : t.pre_order()) {
    const TabNode& n = t.node(id);
    if (n.lit && !n.lit->ground())
      throw LogicError("ipol: non-ground label " + n.lit->str());
  }
  return ipol_rec(t, t.root());
}

Formula ipol_ground_at(const Tableau& t, int node) {
  return ipol_rec(t, node);
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

namespace {

bool head_in(const Term& t, const std::set<std::string>& s) {
  return t.is_fun() && s.count(t.name()) != 0;
}

void maximal_terms_in_term(const Term& t, const std::set<std::string>& fs,
                           const std::set<std::string>& gs, bool covered,
                           std::set<Term>& out) {
  bool marked = head_in(t, fs) || head_in(t, gs);
  if (marked && !covered) out.insert(t);
  for (const auto& a : t.args())
    maximal_terms_in_term(a, fs, gs, covered || marked, out);
}

void maximal_terms(const Formula& f, const std::set<std::string>& fs,
                   const std::set<std::string>& gs, std::set<Term>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      for (const auto& a : f.args())
        maximal_terms_in_term(a, fs, gs, false, out);
      return;
    case Kind::Not:
      maximal_terms(f.child(), fs, gs, out);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) maximal_terms(p, fs, gs, out);
      return;
    default:
      throw LogicError("lift: input must be a ground formula");
  }
}

}  // namespace

std::pair<Formula, LiftingContext> lift(const Formula& ground_h,
                                        const std::set<std::string>& f_set,
                                        const std::set<std::string>& g_set,
                                        Namer& namer) {
  LiftingContext ctx;
  ctx.f_set = f_set;
  ctx.g_set = g_set;

  std::set<Term> max;
  maximal_terms(ground_h, f_set, g_set, max);
  // Quantifier order: replaced subterms before their superterms. Sorting by
  // size realizes that; ties are broken textually.
  std::vector<Term> ordered(max.begin(), max.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Term& a, const Term& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a.str() < b.str();
                   });
  std::vector<std::pair<std::string, Quant>> prefix;
  for (const auto& t : ordered) {
    std::string v = namer.fresh_var();
    ctx.stt.set(v, t);
    prefix.push_back({v, head_in(t, g_set) ? Quant::ForallQ : Quant::ExistsQ});
  }

  Formula hq = inverse_subst(ground_h, ctx.stt);
  std::set<std::string> used = free_vars(hq);
  for (const auto& [v, q] : prefix)
    if (used.count(v)) ctx.prefix.push_back({v, q});

  // replaced-subterm order must be respected by quantifier positions
  for (size_t i = 0; i < ctx.prefix.size(); ++i)
    for (size_t j = i + 1; j < ctx.prefix.size(); ++j) {
      Term ti = *ctx.stt.lookup(ctx.prefix[i].first);
      Term tj = *ctx.stt.lookup(ctx.prefix[j].first);
      if (ti != tj && ti.contains(tj))
        throw LogicError("lift: prefix violates the subterm order");
    }

  Formula out = hq;
  for (auto it = ctx.prefix.rbegin(); it != ctx.prefix.rend(); ++it)
    out = it->second == Quant::ForallQ ? Formula::forall(it->first, out)
                                       : Formula::exists(it->first, out);
  return {out, ctx};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerificationReport verify_craig_lyndon(const Formula& f, const Formula& g,
                                       const Formula& h,
                                       const ProofBudget& budget) {
  VerificationReport r;
  Vocabulary vf = vocabulary(f), vg = vocabulary(g), vh = vocabulary(h);
  for (const auto& p : vh.preds)
    if (!vf.preds.count(p) || !vg.preds.count(p)) {
      r.preds_ok = false;
      r.notes.push_back("predicate " + p.first + "/" +
                        (p.second ? "+" : "-") +
                        " not shared by both inputs");
    }
  for (const auto& fn : vh.funs)
    if (!vf.funs.count(fn) || !vg.funs.count(fn)) {
      r.funs_ok = false;
      r.notes.push_back("function " + fn + " not shared by both inputs");
    }
  r.left_entailment = entails(f, h, budget);
  r.right_entailment = entails(h, g, budget);
  return r;
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

namespace {

std::set<std::string> clause_set_funs(const ClausalForm& cf) {
  std::set<std::string> out;
  for (const auto& c : cf.clauses)
    for (const auto& fn : clause_funs(c)) out.insert(fn);
  return out;
}

Formula clause_formula(const Clause& c) {
  std::vector<Formula> lits;
  for (const auto& l : c) lits.push_back(literal_formula(l));
  Formula body = Formula::disj(std::move(lits));
  std::set<std::string> vs = clause_vars(c);
  for (auto it = vs.rbegin(); it != vs.rend(); ++it)
    body = Formula::forall(*it, std::move(body));
  return body;
}

Formula clausal_formula(const ClausalForm& cf, size_t from) {
  std::vector<Formula> parts;
  for (size_t i = from; i < cf.clauses.size(); ++i)
    parts.push_back(clause_formula(cf.clauses[i]));
  return Formula::conj(std::move(parts));
}

struct PreparedInputs {
  ClausalForm red, blue;
  Formula f_check, g_check;  // verification targets (augmented for equality)
};

PreparedInputs prepare(const Formula& f, const Formula& g, Namer& namer,
                       bool equality) {
  if (!is_sentence(f) || !is_sentence(g))
    throw LogicError("interpolate: inputs must be sentences");
  namer.reserve_all(f);
  namer.reserve_all(g);
  PreparedInputs p{clausify(f, namer),
                   clausify(Formula::negation(g), namer),
                   f,
                   g};
  p.red.side = Side::Red;
  p.blue.side = Side::Blue;
  if (equality) {
    size_t nred = p.red.clauses.size(), nblue = p.blue.clauses.size();
    auto [red2, blue2] = add_equality_axioms(p.red, p.blue);
    p.red = std::move(red2);
    p.blue = std::move(blue2);
    if (p.red.clauses.size() > nred)
      p.f_check = Formula::conj({f, clausal_formula(p.red, nred)});
    if (p.blue.clauses.size() > nblue)
      p.g_check = Formula::disj(
          {g, Formula::negation(clausal_formula(p.blue, nblue))});
  }
  return p;
}

// Quantifier-kind bookkeeping for the constructed prefix: an existential
// variable must trace back to an existential quantification in f or a
// function private to the left clausal form; dually for universal ones.
// Variables replacing terms headed by the grounding constant are exempt.
// The clausal vocabularies are authoritative here: simplification during
// clausification may drop input functions (e.g. with a tautological
// clause), and the term partition is defined on the clausal forms.
void check_prefix_provenance(const LiftingContext& ctx, const Formula& f,
                             const Formula& g,
                             const std::set<std::string>& fun_red,
                             const std::set<std::string>& fun_blue,
                             const std::string& k) {
  bool ex = false, uni = false;
  for (const auto& [v, q] : ctx.prefix) {
    Term t = *ctx.stt.lookup(v);
    if (t.is_fun() && t.name() == k) continue;
    (q == Quant::ExistsQ ? ex : uni) = true;
  }
  auto priv = [](const std::set<std::string>& a,
                 const std::set<std::string>& b) {
    for (const auto& fn : a)
      if (!b.count(fn)) return true;
    return false;
  };
  if (ex && !has_existential(f) && !priv(fun_red, fun_blue))
    throw LogicError("interpolate: unexpected existential quantifier");
  if (uni && !has_universal(g) && !priv(fun_blue, fun_red))
    throw LogicError("interpolate: unexpected universal quantifier");
}

InterpolationResult run_pipeline(const Formula& f, const Formula& g,
                                 const InterpolateOptions& opts,
                                 bool horn_mode) {
  Namer namer;
  PreparedInputs in = prepare(f, g, namer, opts.equality);

  std::vector<InputClause> cs = make_clause_set(in.red, in.blue);
  ProveResult pr =
      opts.prover == InterpolateOptions::Prover::Hyper || horn_mode
          ? prove_hyper(cs, opts.budget)
          : prove_connection(cs, GoalPolicy::NegativeClauses, opts.budget);
  if (!pr.proved())
    throw ProverGaveUp(
        "no proof found within the budget (the entailment may still hold)");

  Tableau t = assign_sides(std::move(*pr.tableau), cs, opts.side_policy);
  std::string k = namer.fresh("k");
  t = ground_tableau(t, k, opts.grounding);
  t = assign_targets(std::move(t));

  Formula hb = ipol_ground(t);
  if (horn_mode) {
    // distribute | over & so the matrix is a conjunction of clauses
    std::vector<Clause> cls = ground_clauses(hb);
    std::vector<Formula> parts;
    for (const auto& c : cls) {
      size_t pos = 0;
      for (const auto& l : c) pos += l.positive ? 1 : 0;
      if (pos > 1)
        throw LogicError("interpolate_horn: non-Horn ground clause " +
                         clause_str(c));
      std::vector<Formula> lits;
      for (const auto& l : c) lits.push_back(literal_formula(l));
      parts.push_back(Formula::disj(std::move(lits)));
    }
    hb = Formula::conj(std::move(parts));
  }

  std::set<std::string> f_funs = clause_set_funs(in.red);
  std::set<std::string> g_funs = clause_set_funs(in.blue);
  std::set<std::string> f_set, g_set;
  for (const auto& fn : f_funs)
    if (!g_funs.count(fn)) f_set.insert(fn);
  for (const auto& fn : g_funs)
    if (!f_funs.count(fn)) g_set.insert(fn);
  (opts.k_in_f ? f_set : g_set).insert(k);

  auto [h, ctx] = lift(hb, f_set, g_set, namer);
  check_prefix_provenance(ctx, f, g, f_funs, g_funs, k);

  InterpolationResult res{std::move(h), std::move(t), std::nullopt,
                          std::move(ctx)};
  if (opts.verify)
    res.verification = verify_craig_lyndon(in.f_check, in.g_check,
                                           res.interpolant, opts.verify_budget);
  return res;
}

}  // namespace

InterpolationResult interpolate(const Formula& f, const Formula& g,
                                const InterpolateOptions& opts) {
  return run_pipeline(f, g, opts, false);
}

InterpolationResult interpolate_horn(const Formula& f, const Formula& g,
                                     const InterpolateOptions& opts) {
  if (!is_horn_sentence(f))
    throw LogicError("interpolate_horn: first input is not Horn");
  InterpolateOptions o = opts;
  // Existential inputs whose right functions all occur left keep an
  // existential prefix when the grounding constant joins the left partition.
  auto existential_sentence = [](const Formula& s) {
    Formula m = s;
    while (m.is(Kind::Exists)) m = m.child();
    return !has_universal(m) && !has_existential(m);
  };
  Vocabulary vf = vocabulary(f), vg = vocabulary(g);
  bool g_funs_in_f = true;
  for (const auto& fn : vg.funs)
    if (!vf.funs.count(fn)) g_funs_in_f = false;
  if (existential_sentence(f) && existential_sentence(g) && g_funs_in_f)
    o.k_in_f = true;
  return run_pipeline(f, g, o, true);
}

namespace {

bool is_literal_formula(const Formula& x) {
  return x.is(Kind::Atom) || (x.is(Kind::Not) && x.child().is(Kind::Atom));
}

bool is_horn_clause_formula(const Formula& x) {
  if (is_literal_formula(x)) return true;
  if (!x.is(Kind::Or)) return x.is(Kind::False);
  int pos = 0;
  for (const auto& l : x.parts()) {
    if (!is_literal_formula(l)) return false;
    if (l.is(Kind::Atom)) ++pos;
  }
  return pos <= 1;
}

// Quantifier prefixes over conjunctions of Horn clauses, with prefixes also
// allowed on the conjuncts; such a sentence prenexes into a Horn sentence
// without touching the clause matrix.
bool is_horn_body(const Formula& f) {
  Formula m = f;
  while (m.is(Kind::Forall) || m.is(Kind::Exists)) m = m.child();
  if (m.is(Kind::True)) return true;
  if (m.is(Kind::And)) {
    for (const auto& c : m.parts())
      if (!is_horn_body(c)) return false;
    return true;
  }
  return is_horn_clause_formula(m);
}

}  // namespace

bool is_horn_sentence(const Formula& f) {
  return is_sentence(f) && is_horn_body(f);
}

std::vector<Clause> ground_clauses(const Formula& hb) {
  std::function<std::vector<Clause>(const Formula&)> rec =
      [&](const Formula& f) -> std::vector<Clause> {
    switch (f.kind()) {
      case Kind::True:
        return {};
      case Kind::False:
        return {Clause{}};
      case Kind::Atom:
        return {Clause{Literal(true, f.pred(), f.args())}};
      case Kind::Not:
        if (!f.child().is(Kind::Atom))
          throw LogicError("ground_clauses: not in negation normal form");
        return {Clause{Literal(false, f.child().pred(), f.child().args())}};
      case Kind::And: {
        std::vector<Clause> out;
        for (const auto& p : f.parts())
          for (auto& c : rec(p)) out.push_back(std::move(c));
        return out;
      }
      case Kind::Or: {
        std::vector<Clause> acc{Clause{}};
        for (const auto& p : f.parts()) {
          std::vector<Clause> sub = rec(p);
          std::vector<Clause> next;
          for (const auto& base : acc)
            for (const auto& s : sub) {
              Clause merged = base;
              merged.insert(merged.end(), s.begin(), s.end());
              next.push_back(std::move(merged));
            }
          acc = std::move(next);
        }
        return acc;
      }
      default:
        throw LogicError("ground_clauses: quantifier in a ground formula");
    }
  };
  return rec(hb);
}

}  // namespace tabipol
