#include "tabipol/prover.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>

namespace tabipol {

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
  long max_inferences;
  Clock::time_point deadline;
  long inferences = 0;
  bool out = false;

  bool spend() {
    if (out) return false;
    ++inferences;
    if (inferences > max_inferences) {
      out = true;
      return false;
    }
    if ((inferences & 1023) == 0 && Clock::now() > deadline) {
      out = true;
      return false;
    }
    return true;
  }
};

// Clauses ranked shortest first, ties by input order.
std::vector<int> ranked_order(const std::vector<InputClause>& clauses) {
  std::vector<int> idx(clauses.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return clauses[a].clause.size() < clauses[b].clause.size();
  });
  return idx;
}

bool is_negative_clause(const Clause& c) {
  for (const auto& l : c)
    if (l.positive) return false;
  return true;
}

std::optional<int> empty_clause_index(const std::vector<InputClause>& cs) {
  for (size_t i = 0; i < cs.size(); ++i)
    if (cs[i].clause.empty()) return static_cast<int>(i);
  return std::nullopt;
}

Tableau empty_clause_tableau(const InputClause& c) {
  Tableau t;
  t.node_mut(t.root()).empty_clause = c.side ? *c.side : Side::Red;
  if (c.meta) t.node_mut(t.root()).meta = c.meta;
  return t;
}

// ---------------------------------------------------------------------------
// Connection prover
// ---------------------------------------------------------------------------

struct Bindings {
  std::map<std::string, Term> map;
  std::vector<std::string> trail;

  size_t mark() const { return trail.size(); }
  void undo(size_t m) {
    while (trail.size() > m) {
      map.erase(trail.back());
      trail.pop_back();
    }
  }

  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = map.find(t.name());
      if (it == map.end()) return t;
      t = it->second;
    }
    return t;
  }

  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_var() || w.args().empty()) return w;
    std::vector<Term> args;
    args.reserve(w.args().size());
    for (const auto& a : w.args()) args.push_back(resolve(a));
    return Term::fun(w.name(), std::move(args));
  }

  Literal resolve(const Literal& l) const {
    std::vector<Term> args;
    args.reserve(l.args.size());
    for (const auto& a : l.args) args.push_back(resolve(a));
    return Literal(l.positive, l.pred, std::move(args));
  }

  bool occurs(const std::string& v, const Term& t) const {
    Term w = walk(t);
    if (w.is_var()) return w.name() == v;
    for (const auto& a : w.args())
      if (occurs(v, a)) return true;
    return false;
  }

  bool unify(const Term& a, const Term& b) {
    Term x = walk(a), y = walk(b);
    if (x.is_var()) {
      if (y.is_var() && y.name() == x.name()) return true;
      if (occurs(x.name(), y)) return false;
      map.emplace(x.name(), y);
      trail.push_back(x.name());
      return true;
    }
    if (y.is_var()) return unify(y, x);
    if (x.name() != y.name() || x.args().size() != y.args().size())
      return false;
    for (size_t i = 0; i < x.args().size(); ++i)
      if (!unify(x.args()[i], y.args()[i])) return false;
    return true;
  }

  bool unify(const Literal& a, const Literal& b) {
    if (a.positive != b.positive || a.pred != b.pred ||
        a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!unify(a.args[i], b.args[i])) return false;
    return true;
  }
};

class ConnectionSearch {
 public:
  ConnectionSearch(const std::vector<InputClause>& clauses, Budget& budget)
      : clauses_(clauses), order_(ranked_order(clauses)), budget_(budget) {}

  std::optional<Tableau> run(GoalPolicy policy, int max_depth,
                             ProveStats& stats) {
    std::vector<int> starts;
    for (int i : order_) {
      if (policy == GoalPolicy::AllClauses ||
          is_negative_clause(clauses_[i].clause))
        starts.push_back(i);
    }
    for (int bound = 1; bound <= max_depth; ++bound) {
      stats.depth_reached = bound;
      hit_depth_limit_ = false;
      for (int start : starts) {
        tableau_ = Tableau();
        bindings_ = Bindings();
        var_counter_ = 0;
        std::vector<int> goals = attach(tableau_.root(), start);
        if (solve(goals, bound)) {
          finalize();
          return tableau_;
        }
        if (budget_.out) return std::nullopt;
      }
      if (!hit_depth_limit_) break;  // saturated: no proof at any depth
    }
    return std::nullopt;
  }

 private:
  // Attaches an instance of clause idx below parent; returns the new open
  // goal node ids in left-to-right order.
  std::vector<int> attach(int parent, int idx) {
    const InputClause& in = clauses_[idx];
    Substitution ren;
    for (const auto& v : clause_vars(in.clause))
      ren.set(v, Term::var("_x" + std::to_string(++var_counter_)));
    std::vector<int> kids;
    for (const auto& lit : in.clause)
      kids.push_back(
          tableau_.add_child(parent, ren.apply(lit), in.side, in.meta));
    return kids;
  }

  Literal current(int node) const {
    return bindings_.resolve(*tableau_.node(node).lit);
  }

  bool regular_after(int node) {
    Literal l = current(node);
    for (int p = tableau_.node(node).parent; p >= 0;
         p = tableau_.node(p).parent) {
      const TabNode& a = tableau_.node(p);
      if (a.lit && current(a.id) == l) return false;
    }
    return true;
  }

  bool solve(std::vector<int> goals, int bound) {
    if (goals.empty()) return true;
    if (!budget_.spend()) return false;
    int goal = goals.front();
    std::vector<int> rest(goals.begin() + 1, goals.end());
    Literal glit = *tableau_.node(goal).lit;
    Literal want = glit.complement();

    // reduction against an ancestor
    for (int p = tableau_.node(goal).parent; p >= 0;
         p = tableau_.node(p).parent) {
      const TabNode& anc = tableau_.node(p);
      if (!anc.lit || anc.lit->positive == glit.positive ||
          anc.lit->pred != glit.pred)
        continue;
      size_t m = bindings_.mark();
      if (bindings_.unify(*anc.lit, want)) {
        tableau_.node_mut(goal).tgt = p;
        if (solve(rest, bound)) return true;
        tableau_.node_mut(goal).tgt.reset();
      }
      bindings_.undo(m);
      if (budget_.out) return false;
    }

    // extension with an input clause
    int depth = tableau_.depth(goal);
    if (depth >= bound) {
      hit_depth_limit_ = true;
      return false;
    }
    for (int idx : order_) {
      const Clause& c = clauses_[idx].clause;
      for (size_t j = 0; j < c.size(); ++j) {
        if (c[j].positive == glit.positive || c[j].pred != glit.pred) continue;
        size_t m = bindings_.mark();
        std::vector<int> kids = attach(goal, static_cast<int>(idx));
        if (bindings_.unify(*tableau_.node(kids[j]).lit, want)) {
          bool regular = true;
          for (size_t i = 0; i < kids.size(); ++i) {
            if (i == j) continue;
            if (!regular_after(kids[i])) {
              regular = false;
              break;
            }
          }
          if (regular) {
            tableau_.node_mut(kids[j]).tgt = goal;
            std::vector<int> next;
            for (size_t i = 0; i < kids.size(); ++i)
              if (i != j) next.push_back(kids[i]);
            next.insert(next.end(), rest.begin(), rest.end());
            if (solve(next, bound)) return true;
          }
        }
        for (int k : kids) tableau_.remove_subtree(k);
        bindings_.undo(m);
        if (budget_.out) return false;
      }
    }
    return false;
  }

  void finalize() {
    for (int id : tableau_.pre_order()) {
      TabNode& n = tableau_.node_mut(id);
      if (n.lit) n.lit = bindings_.resolve(*n.lit);
    }
    tableau_ = assign_targets(std::move(tableau_));
  }

  const std::vector<InputClause>& clauses_;
  std::vector<int> order_;
  Budget& budget_;
  Tableau tableau_;
  Bindings bindings_;
  long var_counter_ = 0;
  bool hit_depth_limit_ = false;
};

// ---------------------------------------------------------------------------
// Hyper prover
// ---------------------------------------------------------------------------

// Ground terms over the clause functions up to a nesting depth.
std::vector<Term> herbrand_terms(const std::vector<InputClause>& clauses,
                                 int depth, size_t cap) {
  std::map<std::string, size_t> funs;
  std::function<void(const Term&)> scan = [&](const Term& t) {
    if (t.is_fun()) {
      funs.try_emplace(t.name(), t.args().size());
      for (const auto& s : t.args()) scan(s);
    }
  };
  for (const auto& in : clauses)
    for (const auto& l : in.clause)
      for (const auto& a : l.args) scan(a);
  bool has_const = false;
  for (const auto& [f, n] : funs)
    if (n == 0) has_const = true;
  if (!has_const) funs.try_emplace("k0", 0);

  std::set<Term> cur;
  for (const auto& [f, n] : funs)
    if (n == 0) cur.insert(Term::constant(f));
  for (int d = 1; d < depth; ++d) {
    std::set<Term> next = cur;
    std::vector<Term> base(cur.begin(), cur.end());
    for (const auto& [f, n] : funs) {
      if (n == 0) continue;
      std::vector<size_t> pick(n, 0);
      for (;;) {
        std::vector<Term> args;
        for (size_t i = 0; i < n; ++i) args.push_back(base[pick[i]]);
        next.insert(Term::fun(f, std::move(args)));
        if (next.size() > cap) break;
        size_t i = 0;
        for (; i < n; ++i) {
          if (++pick[i] < base.size()) break;
          pick[i] = 0;
        }
        if (i == n) break;
      }
      if (next.size() > cap) break;
    }
    if (next == cur || next.size() > cap) break;
    cur = std::move(next);
  }
  return std::vector<Term>(cur.begin(), cur.end());
}

int term_depth(const Term& t) {
  int d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a));
  return d + 1;
}

class HyperSearch {
 public:
  HyperSearch(const std::vector<InputClause>& clauses, Budget& budget)
      : clauses_(clauses), order_(ranked_order(clauses)), budget_(budget) {
    // negative clauses first so closings are never postponed
    std::stable_partition(order_.begin(), order_.end(), [&](int i) {
      return is_negative_clause(clauses_[i].clause);
    });
    for (const auto& in : clauses_)
      for (const auto& l : in.clause)
        for (const auto& a : l.args)
          base_depth_ = std::max(base_depth_, term_depth(a));
  }

  // Iterative deepening is over the depth of the terms in fired instances;
  // with the depth fixed the reachable atoms are finite, so branches close
  // or saturate without a separate length bound.
  std::optional<Tableau> run(int max_depth, ProveStats& stats) {
    for (int bound = 1; bound <= max_depth; ++bound) {
      stats.depth_reached = bound;
      hit_limit_ = false;
      depth_cap_ = base_depth_ + bound;
      universe_ = herbrand_terms(clauses_, bound, 512);
      tableau_ = Tableau();
      if (extend_all()) return tableau_;
      if (budget_.out) return std::nullopt;
      if (!hit_limit_) break;
    }
    return std::nullopt;
  }

 private:
  // Processes open leaves until closed or saturated.
  bool extend_all() {
    std::deque<int> open{tableau_.root()};
    while (!open.empty()) {
      if (!budget_.spend()) return false;
      int leaf = open.front();
      open.pop_front();
      std::vector<Literal> branch = tableau_.branch_literals(leaf);
      std::optional<std::pair<int, Clause>> fired;
      for (int idx : order_) {
        auto inst = applicable_instance(clauses_[idx].clause, branch);
        if (inst) {
          fired = {idx, *inst};
          break;
        }
      }
      if (!fired) return false;  // saturated open branch: no refutation here
      const InputClause& in = clauses_[fired->first];
      std::vector<int> kids;
      for (const auto& lit : fired->second)
        kids.push_back(tableau_.add_child(leaf, lit, in.side, in.meta));
      for (int k : kids)
        if (tableau_.node(k).lit->positive) open.push_back(k);
    }
    tableau_ = assign_targets(std::move(tableau_));
    return is_closed(tableau_);
  }

  // First ground instance of c whose negative literals all have their atoms
  // on the branch and whose positive literals are not all redundant.
  std::optional<Clause> applicable_instance(
      const Clause& c, const std::vector<Literal>& branch) {
    std::vector<const Literal*> negs, poss;
    for (const auto& l : c)
      (l.positive ? poss : negs).push_back(&l);
    std::optional<Clause> found;
    Substitution s;
    std::function<bool(size_t)> match_negs = [&](size_t i) -> bool {
      if (budget_.out) return false;
      if (i == negs.size()) return ground_positives(c, poss, s, branch, found);
      for (const auto& b : branch) {
        if (!b.positive) continue;
        Substitution saved = s;
        if (match_literal(negs[i]->complement(), b, s)) {
          if (match_negs(i + 1)) return true;
        }
        s = std::move(saved);
      }
      return false;
    };
    if (match_negs(0)) return found;
    return std::nullopt;
  }

  bool ground_positives(const Clause& c, const std::vector<const Literal*>& poss,
                        Substitution s, const std::vector<Literal>& branch,
                        std::optional<Clause>& found) {
    // remaining variables of positive literals enumerate the universe
    std::set<std::string> remaining;
    for (const auto* l : poss)
      for (const auto& v : literal_vars(*l))
        if (!s.lookup(v)) remaining.insert(v);
    std::vector<std::string> vars(remaining.begin(), remaining.end());
    std::vector<size_t> pick(vars.size(), 0);
    for (;;) {
      if (!budget_.spend()) return false;
      Substitution full = s;
      for (size_t i = 0; i < vars.size(); ++i) full.set(vars[i], universe_[pick[i]]);
      Clause inst = full.apply(c);
      bool redundant = false;
      for (const auto& l : inst)
        if (l.positive &&
            std::find(branch.begin(), branch.end(), l) != branch.end()) {
          redundant = true;
          break;
        }
      // instances that build terms beyond the current depth wait for a
      // deeper round
      bool too_deep = false;
      for (const auto& l : inst)
        for (const auto& a : l.args)
          if (term_depth(a) > depth_cap_) too_deep = true;
      if (too_deep) {
        hit_limit_ = true;
        redundant = true;
      }
      if (!redundant) {
        bool ground = true;
        for (const auto& l : inst)
          if (!l.ground()) ground = false;
        if (ground) {
          found = inst;
          return true;
        }
      }
      if (vars.empty()) return false;
      size_t i = 0;
      for (; i < vars.size(); ++i) {
        if (++pick[i] < universe_.size()) break;
        pick[i] = 0;
      }
      if (i == vars.size()) {
        hit_limit_ = true;  // larger universe may help
        return false;
      }
    }
  }

  const std::vector<InputClause>& clauses_;
  std::vector<int> order_;
  Budget& budget_;
  Tableau tableau_;
  std::vector<Term> universe_;
  int base_depth_ = 1;
  int depth_cap_ = 2;
  bool hit_limit_ = false;
};

Budget make_budget(const ProofBudget& b) {
  Budget r{b.max_inferences,
           Clock::now() + std::chrono::milliseconds(b.timeout_ms)};
  return r;
}

}  // namespace

ProveResult prove_connection(const std::vector<InputClause>& clauses,
                             GoalPolicy policy, const ProofBudget& budget) {
  ProveResult res;
  if (clauses.empty()) throw LogicError("prove: no clauses");
  if (auto e = empty_clause_index(clauses)) {
    res.tableau = empty_clause_tableau(clauses[*e]);
    return res;
  }
  Budget b = make_budget(budget);
  ConnectionSearch search(clauses, b);
  res.tableau = search.run(policy, budget.max_depth, res.stats);
  res.stats.inferences = b.inferences;
  res.stats.budget_exhausted = b.out;
  return res;
}

ProveResult prove_hyper(const std::vector<InputClause>& clauses,
                        const ProofBudget& budget) {
  ProveResult res;
  if (clauses.empty()) throw LogicError("prove: no clauses");
  if (auto e = empty_clause_index(clauses)) {
    res.tableau = empty_clause_tableau(clauses[*e]);
    return res;
  }
  Budget b = make_budget(budget);
  HyperSearch search(clauses, b);
  res.tableau = search.run(budget.max_depth, res.stats);
  res.stats.inferences = b.inferences;
  res.stats.budget_exhausted = b.out;
  return res;
}

Entailment entails(const Formula& f, const Formula& g,
                   const ProofBudget& budget) {
  Namer namer;
  namer.reserve_all(f);
  namer.reserve_all(g);
  ClausalForm red = clausify(f, namer);
  ClausalForm blue = clausify(Formula::negation(g), namer);
  std::vector<InputClause> cs = make_clause_set(red, blue);
  ProveResult r = prove_connection(cs, GoalPolicy::NegativeClauses, budget);
  return r.proved() ? Entailment::Yes : Entailment::Unknown;
}

}  // namespace tabipol
