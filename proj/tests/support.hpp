#ifndef TABIPOL_TESTS_SUPPORT_HPP
#define TABIPOL_TESTS_SUPPORT_HPP

// Independent oracles and generators used across the test suites. These stay
// deliberately naive: truth tables, exhaustive model enumeration, structural
// recursion. They never call into the code paths they are used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tabipol/formula.hpp"
#include "tabipol/term.hpp"

namespace ttest {

using namespace tabipol;

// ---------------------------------------------------------------------------
// Propositional truth tables (atoms are 0-ary predicates)
// ---------------------------------------------------------------------------

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
      return;
    case K::Atom:
      out.insert(f.pred());
      return;
    case K::Not:
      collect_atoms(f.child(), out);
      return;
    case K::And:
    case K::Or:
      for (const auto& p : f.parts()) collect_atoms(p, out);
      return;
    default:
      throw std::runtime_error("collect_atoms: not propositional");
  }
}

inline bool eval_prop(const Formula& f,
                      const std::map<std::string, bool>& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return v.at(f.pred());
    case K::Not:
      return !eval_prop(f.child(), v);
    case K::And:
      for (const auto& p : f.parts())
        if (!eval_prop(p, v)) return false;
      return true;
    case K::Or:
      for (const auto& p : f.parts())
        if (eval_prop(p, v)) return true;
      return false;
    default:
      throw std::runtime_error("eval_prop: not propositional");
  }
}

// Calls fn for every assignment over the union of atoms of the formulas.
inline void for_each_assignment(
    const std::vector<Formula>& fs,
    const std::function<void(const std::map<std::string, bool>&)>& fn) {
  std::set<std::string> atoms;
  for (const auto& f : fs) collect_atoms(f, atoms);
  std::vector<std::string> a(atoms.begin(), atoms.end());
  if (a.size() > 20) throw std::runtime_error("too many atoms");
  for (uint32_t bits = 0; bits < (1u << a.size()); ++bits) {
    std::map<std::string, bool> v;
    for (size_t i = 0; i < a.size(); ++i) v[a[i]] = (bits >> i) & 1;
    fn(v);
  }
}

inline bool tt_entails(const Formula& f, const Formula& g) {
  bool ok = true;
  for_each_assignment({f, g}, [&](const std::map<std::string, bool>& v) {
    if (eval_prop(f, v) && !eval_prop(g, v)) ok = false;
  });
  return ok;
}

inline bool tt_unsat(const Formula& f) {
  bool sat = false;
  for_each_assignment({f}, [&](const std::map<std::string, bool>& v) {
    if (eval_prop(f, v)) sat = true;
  });
  return !sat;
}

// ---------------------------------------------------------------------------
// Finite first-order models (relational formulas; the domain is a list of
// ground terms standing for themselves)
// ---------------------------------------------------------------------------

struct FiniteModel {
  std::vector<Term> domain;
  // predicate -> set of argument tuples (domain indices)
  std::map<std::string, std::set<std::vector<size_t>>> rel;

  bool holds(const std::string& pred, const std::vector<size_t>& tup) const {
    auto it = rel.find(pred);
    return it != rel.end() && it->second.count(tup) != 0;
  }

  std::optional<size_t> index_of(const Term& t) const {
    for (size_t i = 0; i < domain.size(); ++i)
      if (domain[i] == t) return i;
    return std::nullopt;
  }
};

inline bool eval_fo(const Formula& f, const FiniteModel& m,
                    std::map<std::string, size_t>& env) {
  using K = Formula::Kind;
  auto term_index = [&](const Term& t) -> size_t {
    if (t.is_var()) return env.at(t.name());
    auto i = m.index_of(t);
    if (!i) throw std::runtime_error("term outside the domain: " + t.str());
    return *i;
  };
  auto atom_holds = [&](const std::string& pred,
                        const std::vector<Term>& args) {
    std::vector<size_t> tup;
    for (const auto& a : args) tup.push_back(term_index(a));
    return m.holds(pred, tup);
  };
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return atom_holds(f.pred(), f.args());
    case K::Not:
      return !eval_fo(f.child(), m, env);
    case K::And:
      for (const auto& p : f.parts())
        if (!eval_fo(p, m, env)) return false;
      return true;
    case K::Or:
      for (const auto& p : f.parts())
        if (eval_fo(p, m, env)) return true;
      return false;
    case K::Forall:
      for (size_t i = 0; i < m.domain.size(); ++i) {
        env[f.var()] = i;
        bool r = eval_fo(f.child(), m, env);
        env.erase(f.var());
        if (!r) return false;
      }
      return true;
    case K::Exists:
      for (size_t i = 0; i < m.domain.size(); ++i) {
        env[f.var()] = i;
        bool r = eval_fo(f.child(), m, env);
        env.erase(f.var());
        if (r) return true;
      }
      return false;
    case K::ForallRel:
    case K::ExistsRel: {
      bool isAll = f.is(K::ForallRel);
      const auto& vars = f.rel_vars();
      std::function<bool(size_t)> loop = [&](size_t vi) -> bool {
        if (vi == vars.size()) {
          Literal g = f.guard();
          bool gh = atom_holds(g.pred, g.args);
          if (isAll) {
            if (!gh) return true;
            return eval_fo(f.child(), m, env);
          }
          if (!gh) return false;
          return eval_fo(f.child(), m, env);
        }
        for (size_t i = 0; i < m.domain.size(); ++i) {
          env[vars[vi]] = i;
          bool r = loop(vi + 1);
          env.erase(vars[vi]);
          if (isAll && !r) return false;
          if (!isAll && r) return true;
        }
        return isAll;
      };
      return loop(0);
    }
  }
  throw std::runtime_error("eval_fo: unreachable");
}

inline bool eval_fo(const Formula& f, const FiniteModel& m) {
  std::map<std::string, size_t> env;
  return eval_fo(f, m, env);
}

// All ground atoms over the given predicates (name, arity) and domain size.
inline std::vector<std::pair<std::string, std::vector<size_t>>> ground_atoms(
    const std::map<std::string, size_t>& preds, size_t domain) {
  std::vector<std::pair<std::string, std::vector<size_t>>> out;
  for (const auto& [p, n] : preds) {
    std::vector<size_t> tup(n, 0);
    for (;;) {
      out.push_back({p, tup});
      size_t i = 0;
      for (; i < n; ++i) {
        if (++tup[i] < domain) break;
        tup[i] = 0;
      }
      if (i == n) break;
    }
  }
  return out;
}

// Enumerates every interpretation of preds over the domain terms.
inline void for_each_model(
    const std::vector<Term>& domain, const std::map<std::string, size_t>& preds,
    const std::function<void(const FiniteModel&)>& fn) {
  auto atoms = ground_atoms(preds, domain.size());
  if (atoms.size() > 22) throw std::runtime_error("model space too large");
  for (uint64_t bits = 0; bits < (1ull << atoms.size()); ++bits) {
    FiniteModel m;
    m.domain = domain;
    for (size_t i = 0; i < atoms.size(); ++i)
      if ((bits >> i) & 1) m.rel[atoms[i].first].insert(atoms[i].second);
    fn(m);
  }
}

// Herbrand entailment for relational sentences over their constants: valid
// because function-free clause sets are unsatisfiable iff they have no
// Herbrand model over the occurring constants.
inline bool herbrand_entails(const Formula& f, const Formula& g) {
  Formula both = Formula::conj({f, g});
  Vocabulary v = vocabulary(both);
  if (v.funs.size() != v.consts.size())
    throw std::runtime_error("herbrand_entails: inputs must be relational");
  std::vector<Term> domain;
  for (const auto& c : v.consts) domain.push_back(Term::constant(c));
  if (domain.empty()) domain.push_back(Term::constant("c0"));
  std::map<std::string, size_t> preds;
  std::function<void(const Formula&)> scan = [&](const Formula& x) {
    using K = Formula::Kind;
    switch (x.kind()) {
      case K::Atom:
        preds.try_emplace(x.pred(), x.args().size());
        return;
      case K::Not:
        scan(x.child());
        return;
      case K::And:
      case K::Or:
        for (const auto& p : x.parts()) scan(p);
        return;
      case K::Forall:
      case K::Exists:
        scan(x.child());
        return;
      case K::ForallRel:
      case K::ExistsRel:
        preds.try_emplace(x.guard().pred, x.guard().args.size());
        scan(x.child());
        return;
      default:
        return;
    }
  };
  scan(both);
  bool entailed = true;
  for_each_model(domain, preds, [&](const FiniteModel& m) {
    if (eval_fo(f, m) && !eval_fo(g, m)) entailed = false;
  });
  return entailed;
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random propositional clause set formula over atoms a1..a<n>.
inline Formula random_clause_formula(Rng& rng, int num_atoms, int max_clauses,
                                     int max_len) {
  int clauses = pick(rng, 1, max_clauses);
  std::vector<Formula> cs;
  for (int i = 0; i < clauses; ++i) {
    int len = pick(rng, 1, max_len);
    std::vector<Formula> lits;
    for (int j = 0; j < len; ++j) {
      Formula a = Formula::atom("a" + std::to_string(pick(rng, 1, num_atoms)));
      lits.push_back(pick(rng, 0, 1) ? a : Formula::negation(a));
    }
    cs.push_back(Formula::disj(std::move(lits)));
  }
  return Formula::conj(std::move(cs));
}

}  // namespace ttest

#endif
