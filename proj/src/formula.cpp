#include "tabipol/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace tabipol {

namespace {
using Kind = Formula::Kind;
}

Formula Formula::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return Formula(std::move(n));
}

Formula Formula::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->pred = std::move(pred);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::atom(const Literal& lit) {
  if (!lit.positive) throw LogicError("atom: literal must be positive");
  return atom(lit.pred, lit.args);
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->parts.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.is(Kind::And))
      for (const auto& q : p.parts()) flat.push_back(q);
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->parts = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::disj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.is(Kind::Or))
      for (const auto& q : p.parts()) flat.push_back(q);
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->parts = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->pred = std::move(var);
  n->parts.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->pred = std::move(var);
  n->parts.push_back(std::move(body));
  return Formula(std::move(n));
}

static void check_rel_vars(const std::vector<std::string>& vars,
                           const Literal& guard) {
  std::set<std::string> gv;
  for (const auto& a : guard.args) collect_vars(a, gv);
  for (const auto& v : vars)
    if (!gv.count(v))
      throw LogicError("relativized quantifier: variable " + v +
                       " does not occur in the guard atom");
}

Formula Formula::forall_rel(std::vector<std::string> vars, Literal guard,
                            Formula body) {
  check_rel_vars(vars, guard);
  auto n = std::make_shared<Node>();
  n->kind = Kind::ForallRel;
  n->pred = guard.pred;
  n->args = guard.args;
  n->rel_vars = std::move(vars);
  std::sort(n->rel_vars.begin(), n->rel_vars.end());
  n->parts.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::exists_rel(std::vector<std::string> vars, Literal guard,
                            Formula body) {
  check_rel_vars(vars, guard);
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExistsRel;
  n->pred = guard.pred;
  n->args = guard.args;
  n->rel_vars = std::move(vars);
  std::sort(n->rel_vars.begin(), n->rel_vars.end());
  n->parts.push_back(std::move(body));
  return Formula(std::move(n));
}

Literal Formula::atom_literal() const {
  assert(is(Kind::Atom));
  return Literal(true, pred(), args());
}

Literal Formula::guard() const {
  assert(is(Kind::ForallRel) || is(Kind::ExistsRel));
  return Literal(true, node_->pred, node_->args);
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || node_->pred != o.node_->pred ||
      node_->args != o.node_->args || node_->rel_vars != o.node_->rel_vars)
    return false;
  if (node_->parts.size() != o.node_->parts.size()) return false;
  for (size_t i = 0; i < node_->parts.size(); ++i)
    if (!(node_->parts[i] == o.node_->parts[i])) return false;
  return true;
}

bool Formula::operator<(const Formula& o) const {
  if (node_ == o.node_) return false;
  if (kind() != o.kind()) return kind() < o.kind();
  if (node_->pred != o.node_->pred) return node_->pred < o.node_->pred;
  if (node_->args != o.node_->args) return node_->args < o.node_->args;
  if (node_->rel_vars != o.node_->rel_vars)
    return node_->rel_vars < o.node_->rel_vars;
  return std::lexicographical_compare(
      node_->parts.begin(), node_->parts.end(), o.node_->parts.begin(),
      o.node_->parts.end());
}

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      for (const auto& a : f.args()) {
        std::set<std::string> vs;
        collect_vars(a, vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      return;
    case Kind::Not:
      free_vars_rec(f.child(), bound, out);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) free_vars_rec(p, bound, out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      bool added = bound.insert(f.var()).second;
      free_vars_rec(f.child(), bound, out);
      if (added) bound.erase(f.var());
      return;
    }
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      std::vector<std::string> added;
      for (const auto& v : f.rel_vars())
        if (bound.insert(v).second) added.push_back(v);
      for (const auto& a : f.guard().args) {
        std::set<std::string> vs;
        collect_vars(a, vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      free_vars_rec(f.child(), bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

namespace {

void vocab_rec(const Formula& f, bool pol, Vocabulary& v) {
  auto add_atom = [&](const std::string& pred, const std::vector<Term>& args,
                      bool p) {
    v.preds.insert({pred, p});
    for (const auto& a : args) {
      v.pargs.insert(a);
      collect_funs(a, v.funs);
    }
  };
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      add_atom(f.pred(), f.args(), pol);
      return;
    case Kind::Not:
      vocab_rec(f.child(), !pol, v);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) vocab_rec(p, pol, v);
      return;
    case Kind::Forall:
    case Kind::Exists:
      vocab_rec(f.child(), pol, v);
      return;
    case Kind::ForallRel:
      // forall vs (~R | body): the guard occurs negated
      add_atom(f.guard().pred, f.guard().args, !pol);
      vocab_rec(f.child(), pol, v);
      return;
    case Kind::ExistsRel:
      add_atom(f.guard().pred, f.guard().args, pol);
      vocab_rec(f.child(), pol, v);
      return;
  }
}

}  // namespace

Vocabulary vocabulary(const Formula& f) {
  Vocabulary v;
  vocab_rec(f, true, v);
  std::set<std::string> cs;
  std::function<void(const Term&)> scan = [&](const Term& t) {
    if (t.is_fun()) {
      if (t.args().empty()) cs.insert(t.name());
      for (const auto& a : t.args()) scan(a);
    }
  };
  for (const auto& t : v.pargs) scan(t);
  v.consts = std::move(cs);
  return v;
}

namespace {

void lit_occ_rec(const Formula& f, bool pol, std::set<Literal>& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      out.insert(Literal(pol, f.pred(), f.args()));
      return;
    case Kind::Not:
      lit_occ_rec(f.child(), !pol, out);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) lit_occ_rec(p, pol, out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      lit_occ_rec(f.child(), pol, out);
      return;
    case Kind::ForallRel:
      out.insert(Literal(!pol, f.guard().pred, f.guard().args));
      lit_occ_rec(f.child(), pol, out);
      return;
    case Kind::ExistsRel:
      out.insert(Literal(pol, f.guard().pred, f.guard().args));
      lit_occ_rec(f.child(), pol, out);
      return;
  }
}

}  // namespace

std::set<Literal> literal_occurrences(const Formula& f) {
  std::set<Literal> out;
  lit_occ_rec(f, true, out);
  return out;
}

namespace {

Formula subst_rec(const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(s.apply(a));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Kind::Not:
      return Formula::negation(subst_rec(f.child(), s));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ps;
      ps.reserve(f.parts().size());
      for (const auto& p : f.parts()) ps.push_back(subst_rec(p, s));
      return f.is(Kind::And) ? Formula::conj(std::move(ps))
                             : Formula::disj(std::move(ps));
    }
    case Kind::Forall:
    case Kind::Exists: {
      // Capture check: the binder must not swallow variables of substituted
      // terms, and the bound variable itself is shadowed.
      Substitution inner;
      for (const auto& [v, t] : s.bindings()) {
        if (v == f.var()) continue;
        std::set<std::string> tv;
        collect_vars(t, tv);
        if (tv.count(f.var())) {
          std::set<std::string> fv = free_vars(f.child());
          if (fv.count(v)) throw LogicError("capture");
          continue;
        }
        inner.set(v, t);
      }
      Formula body = subst_rec(f.child(), inner);
      return f.is(Kind::Forall) ? Formula::forall(f.var(), std::move(body))
                                : Formula::exists(f.var(), std::move(body));
    }
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      std::set<std::string> bound(f.rel_vars().begin(), f.rel_vars().end());
      Substitution inner;
      for (const auto& [v, t] : s.bindings()) {
        if (bound.count(v)) continue;
        std::set<std::string> tv;
        collect_vars(t, tv);
        for (const auto& b : f.rel_vars())
          if (tv.count(b)) {
            std::set<std::string> fv = free_vars(f);
            if (fv.count(v)) throw LogicError("capture");
          }
        inner.set(v, t);
      }
      Literal g = f.guard();
      for (auto& a : g.args) a = inner.apply(a);
      Formula body = subst_rec(f.child(), inner);
      return f.is(Kind::ForallRel)
                 ? Formula::forall_rel(f.rel_vars(), std::move(g),
                                       std::move(body))
                 : Formula::exists_rel(f.rel_vars(), std::move(g),
                                       std::move(body));
    }
  }
  throw LogicError("unreachable");
}

}  // namespace

Formula apply_subst(const Formula& f, const Substitution& s) {
  return subst_rec(f, s);
}

namespace {

Formula map_atom_args(const Formula& f,
                      const std::function<Term(const Term&)>& fn) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(fn(a));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Kind::Not:
      return Formula::negation(map_atom_args(f.child(), fn));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(map_atom_args(p, fn));
      return f.is(Kind::And) ? Formula::conj(std::move(ps))
                             : Formula::disj(std::move(ps));
    }
    case Kind::Forall:
      return Formula::forall(f.var(), map_atom_args(f.child(), fn));
    case Kind::Exists:
      return Formula::exists(f.var(), map_atom_args(f.child(), fn));
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      Literal g = f.guard();
      for (auto& a : g.args) a = fn(a);
      Formula body = map_atom_args(f.child(), fn);
      return f.is(Kind::ForallRel)
                 ? Formula::forall_rel(f.rel_vars(), std::move(g),
                                       std::move(body))
                 : Formula::exists_rel(f.rel_vars(), std::move(g),
                                       std::move(body));
    }
  }
  throw LogicError("unreachable");
}

}  // namespace

Formula inverse_subst(const Formula& f, const Substitution& s) {
  if (!s.injective()) throw LogicError("inverse substitution: not injective");
  return map_atom_args(f,
                       [&](const Term& t) { return inverse_subst(t, s); });
}

std::set<Term> garg(const Formula& f) {
  std::set<Term> out;
  for (const auto& t : vocabulary(f).pargs)
    if (t.ground()) out.insert(t);
  return out;
}

Formula top_inverse_subst(const Formula& f, const Substitution& s) {
  if (!s.injective())
    throw LogicError("top inverse substitution: not injective");
  std::set<Term> ga = garg(f);
  for (const auto& t : s.range())
    if (!ga.count(t))
      throw LogicError(
          "top inverse substitution: range term not a ground argument: " +
          t.str());
  std::set<std::string> fv = free_vars(f);
  for (const auto& v : s.domain())
    if (fv.count(v))
      throw LogicError("top inverse substitution: domain variable " + v +
                       " occurs in the formula");
  return map_atom_args(f, [&](const Term& a) -> Term {
    for (const auto& [v, t] : s.bindings())
      if (t == a) return Term::var(v);
    return a;
  });
}

Formula derelativize(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Not:
      return Formula::negation(derelativize(f.child()));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(derelativize(p));
      return f.is(Kind::And) ? Formula::conj(std::move(ps))
                             : Formula::disj(std::move(ps));
    }
    case Kind::Forall:
      return Formula::forall(f.var(), derelativize(f.child()));
    case Kind::Exists:
      return Formula::exists(f.var(), derelativize(f.child()));
    case Kind::ForallRel: {
      Formula body = Formula::disj(
          {Formula::negation(Formula::atom(f.guard())), derelativize(f.child())});
      for (auto it = f.rel_vars().rbegin(); it != f.rel_vars().rend(); ++it)
        body = Formula::forall(*it, std::move(body));
      return body;
    }
    case Kind::ExistsRel: {
      Formula body =
          Formula::conj({Formula::atom(f.guard()), derelativize(f.child())});
      for (auto it = f.rel_vars().rbegin(); it != f.rel_vars().rend(); ++it)
        body = Formula::exists(*it, std::move(body));
      return body;
    }
  }
  throw LogicError("unreachable");
}

namespace {

bool alpha_rec(const Formula& a, const Formula& b,
               std::map<std::string, std::string>& ab,
               std::map<std::string, std::string>& ba);

bool alpha_term(const Term& s, const Term& t,
                std::map<std::string, std::string>& ab,
                std::map<std::string, std::string>& ba) {
  if (s.is_var() != t.is_var()) return false;
  if (s.is_var()) {
    auto i = ab.find(s.name());
    auto j = ba.find(t.name());
    if (i == ab.end() && j == ba.end()) return s.name() == t.name();
    return i != ab.end() && j != ba.end() && i->second == t.name() &&
           j->second == s.name();
  }
  if (s.name() != t.name() || s.args().size() != t.args().size()) return false;
  for (size_t i = 0; i < s.args().size(); ++i)
    if (!alpha_term(s.args()[i], t.args()[i], ab, ba)) return false;
  return true;
}

bool alpha_rec(const Formula& a, const Formula& b,
               std::map<std::string, std::string>& ab,
               std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Atom: {
      if (a.pred() != b.pred() || a.args().size() != b.args().size())
        return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], ab, ba)) return false;
      return true;
    }
    case Kind::Not:
      return alpha_rec(a.child(), b.child(), ab, ba);
    case Kind::And:
    case Kind::Or: {
      if (a.parts().size() != b.parts().size()) return false;
      for (size_t i = 0; i < a.parts().size(); ++i)
        if (!alpha_rec(a.parts()[i], b.parts()[i], ab, ba)) return false;
      return true;
    }
    case Kind::Forall:
    case Kind::Exists: {
      auto save_ab = ab, save_ba = ba;
      ab[a.var()] = b.var();
      ba[b.var()] = a.var();
      bool r = alpha_rec(a.child(), b.child(), ab, ba);
      ab = save_ab;
      ba = save_ba;
      return r;
    }
    case Kind::ForallRel:
    case Kind::ExistsRel: {
      if (a.rel_vars().size() != b.rel_vars().size()) return false;
      auto save_ab = ab, save_ba = ba;
      for (size_t i = 0; i < a.rel_vars().size(); ++i) {
        ab[a.rel_vars()[i]] = b.rel_vars()[i];
        ba[b.rel_vars()[i]] = a.rel_vars()[i];
      }
      Literal ga = a.guard(), gb = b.guard();
      bool r = ga.pred == gb.pred && ga.args.size() == gb.args.size();
      for (size_t i = 0; r && i < ga.args.size(); ++i)
        r = alpha_term(ga.args[i], gb.args[i], ab, ba);
      if (r) r = alpha_rec(a.child(), b.child(), ab, ba);
      ab = save_ab;
      ba = save_ba;
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_rec(a, b, ab, ba);
}

namespace {

void quant_rec(const Formula& f, bool pol, bool& ex, bool& uni) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return;
    case Kind::Not:
      quant_rec(f.child(), !pol, ex, uni);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& p : f.parts()) quant_rec(p, pol, ex, uni);
      return;
    case Kind::Forall:
      (pol ? uni : ex) = true;
      quant_rec(f.child(), pol, ex, uni);
      return;
    case Kind::Exists:
      (pol ? ex : uni) = true;
      quant_rec(f.child(), pol, ex, uni);
      return;
    case Kind::ForallRel:
      if (!f.rel_vars().empty()) (pol ? uni : ex) = true;
      quant_rec(f.child(), pol, ex, uni);
      return;
    case Kind::ExistsRel:
      if (!f.rel_vars().empty()) (pol ? ex : uni) = true;
      quant_rec(f.child(), pol, ex, uni);
      return;
  }
}

}  // namespace

bool has_existential(const Formula& f) {
  bool ex = false, uni = false;
  quant_rec(f, true, ex, uni);
  return ex;
}

bool has_universal(const Formula& f) {
  bool ex = false, uni = false;
  quant_rec(f, true, ex, uni);
  return uni;
}

Formula fold_constants(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Not: {
      Formula c = fold_constants(f.child());
      if (c.is(Kind::True)) return Formula::falsity();
      if (c.is(Kind::False)) return Formula::truth();
      return Formula::negation(std::move(c));
    }
    case Kind::And: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) {
        Formula q = fold_constants(p);
        if (q.is(Kind::False)) return Formula::falsity();
        if (q.is(Kind::True)) continue;
        ps.push_back(std::move(q));
      }
      return Formula::conj(std::move(ps));
    }
    case Kind::Or: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) {
        Formula q = fold_constants(p);
        if (q.is(Kind::True)) return Formula::truth();
        if (q.is(Kind::False)) continue;
        ps.push_back(std::move(q));
      }
      return Formula::disj(std::move(ps));
    }
    case Kind::Forall:
      return Formula::forall(f.var(), fold_constants(f.child()));
    case Kind::Exists:
      return Formula::exists(f.var(), fold_constants(f.child()));
    case Kind::ForallRel:
      return Formula::forall_rel(f.rel_vars(), f.guard(),
                                 fold_constants(f.child()));
    case Kind::ExistsRel:
      return Formula::exists_rel(f.rel_vars(), f.guard(),
                                 fold_constants(f.child()));
  }
  throw LogicError("unreachable");
}

void Namer::reserve_all(const Formula& f) {
  Vocabulary v = vocabulary(f);
  for (const auto& [p, pol] : v.preds) reserve(p);
  for (const auto& fn : v.funs) reserve(fn);
  for (const auto& x : free_vars(f)) reserve(x);
  // bound variables too: walk pargs' variables plus quantifier names would
  // need a traversal; cheap over-approximation via the printer is avoided by
  // a direct recursion here.
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Forall:
      case Kind::Exists:
        reserve(g.var());
        rec(g.child());
        return;
      case Kind::ForallRel:
      case Kind::ExistsRel:
        for (const auto& x : g.rel_vars()) reserve(x);
        rec(g.child());
        return;
      case Kind::Not:
        rec(g.child());
        return;
      case Kind::And:
      case Kind::Or:
        for (const auto& p : g.parts()) rec(p);
        return;
      default:
        return;
    }
  };
  rec(f);
}

void Namer::reserve_all(const Clause& c) {
  for (const auto& l : c) {
    reserve(l.pred);
    for (const auto& a : l.args) {
      std::set<std::string> vs, fs;
      collect_vars(a, vs);
      collect_funs(a, fs);
      for (const auto& v : vs) reserve(v);
      for (const auto& f : fs) reserve(f);
    }
  }
}

std::string Namer::fresh_var() {
  for (;;) {
    std::string name = "_v" + std::to_string(++var_counter_);
    if (!used_.count(name)) {
      used_.insert(name);
      return name;
    }
  }
}

std::string Namer::fresh(const std::string& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  for (int i = 0;; ++i) {
    std::string name = base + std::to_string(i);
    if (!used_.count(name)) {
      used_.insert(name);
      return name;
    }
  }
}

}  // namespace tabipol
