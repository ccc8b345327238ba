#include "tabipol/transforms.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "tabipol/access.hpp"

namespace tabipol {

namespace {

constexpr long long kOmega = std::numeric_limits<long long>::max() / 2;
constexpr int kMaxRounds = 100000;

void trace_round(TransformTrace* trace, const std::string& proc,
                 std::vector<int> nodes, size_t before, size_t after,
                 std::vector<long long> measure,
                 std::vector<long long> measure_after, const Tableau* snap) {
  if (!trace) return;
  trace->entries.push_back({proc, std::move(nodes), before, after,
                            std::move(measure), std::move(measure_after)});
  if (trace->keep_snapshots && snap) trace->snapshots.push_back(*snap);
}

// Copies the subtree at src as unattached nodes; internal targets remapped.
int copy_subtree(Tableau& t, int src, std::map<int, int>& mapping) {
  std::function<int(int, int)> rec = [&](int id, int parent) -> int {
    TabNode c = t.node(id);
    c.id = t.fresh_id();
    c.parent = parent;
    c.children.clear();
    mapping[id] = c.id;
    t.insert_node(c);
    for (int k : t.node(id).children) {
      int nk = rec(k, c.id);
      t.node_mut(c.id).children.push_back(nk);
    }
    return c.id;
  };
  int root = rec(src, -1);
  for (const auto& [o, n] : mapping) {
    TabNode& nd = t.node_mut(n);
    if (nd.tgt) {
      auto it = mapping.find(*nd.tgt);
      if (it != mapping.end()) nd.tgt = it->second;
    }
  }
  return root;
}

// Moves the children of from onto to (appended), updating parents.
void reparent_children(Tableau& t, int from, int to) {
  std::vector<int> kids = t.node(from).children;
  t.node_mut(from).children.clear();
  for (int k : kids) {
    t.node_mut(k).parent = to;
    t.node_mut(to).children.push_back(k);
  }
}

}  // namespace

std::string TransformTrace::str() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << e.proc << ": nodes";
    for (int n : e.nodes) os << ' ' << n;
    os << "; " << e.nodes_before << " -> " << e.nodes_after << " nodes";
    auto put = [&](const std::vector<long long>& ms) {
      for (long long m : ms)
        if (m == kOmega)
          os << " w";
        else
          os << ' ' << m;
    };
    if (!e.measure.empty()) {
      os << "; measure";
      put(e.measure);
      os << " ->";
      put(e.measure_after);
    }
    os << '\n';
  }
  return os.str();
}

Tableau remove_uneagerness(Tableau t, TransformTrace* trace) {
  for (int round = 0; round < kMaxRounds; ++round) {
    t = assign_targets(std::move(t));
    int pick = -1;
    for (int id : t.pre_order()) {
      const TabNode& n = t.node(id);
      if (!n.tgt || t.is_leaf(id)) continue;
      // prune only when a closed node sits below this closed node
      bool closed_below = false;
      std::function<void(int)> scan = [&](int cur) {
        for (int c : t.node(cur).children) {
          if (t.node(c).tgt) closed_below = true;
          if (!closed_below) scan(c);
        }
      };
      scan(id);
      if (closed_below) {
        pick = id;
        break;
      }
    }
    if (pick < 0) break;
    size_t before = t.node_count();
    t.remove_children(pick);
    trace_round(trace, "eager", {pick}, before, t.node_count(), {}, {}, &t);
  }
  return assign_targets(std::move(t));
}

Tableau remove_irregularities(Tableau t, TransformTrace* trace) {
  for (int round = 0; round < kMaxRounds; ++round) {
    int pick = -1;
    for (int id : t.pre_order()) {
      const TabNode& n = t.node(id);
      if (!n.lit) continue;
      for (int p = n.parent; p >= 0; p = t.node(p).parent)
        if (t.node(p).lit && *t.node(p).lit == *n.lit) {
          pick = id;
          break;
        }
      if (pick >= 0) break;
    }
    if (pick < 0) break;
    int parent = t.node(pick).parent;
    size_t before = t.node_count();
    // keep the subtrees of pick; drop all other children of parent
    std::vector<int> moved = t.node(pick).children;
    t.node_mut(pick).children.clear();
    for (int k : moved) t.node_mut(k).parent = -1;
    t.remove_children(parent);
    for (int k : moved) {
      t.node_mut(k).parent = parent;
      t.node_mut(parent).children.push_back(k);
    }
    trace_round(trace, "regular", {pick, parent}, before, t.node_count(),
                {}, {}, &t);
  }
  return assign_targets(std::move(t));
}

namespace {

std::vector<long long> leafonly_measure(const Tableau& t, int nprime,
                                        const std::set<Literal>& s) {
  // position code: number of right siblings along the path, root included
  std::vector<long long> code;
  std::vector<int> path = t.ancestors(nprime);
  path.push_back(nprime);
  for (int id : path) {
    int parent = t.node(id).parent;
    if (parent < 0) {
      code.push_back(0);
      continue;
    }
    const auto& sib = t.node(parent).children;
    auto it = std::find(sib.begin(), sib.end(), id);
    code.push_back(static_cast<long long>(sib.end() - it) - 1);
  }
  code.push_back(kOmega);
  std::set<Literal> bad;
  std::function<void(int)> scan = [&](int cur) {
    for (int c : t.node(cur).children) {
      const TabNode& n = t.node(c);
      if (n.lit && t.is_inner(c) && s.count(*n.lit)) bad.insert(*n.lit);
      scan(c);
    }
  };
  scan(nprime);
  code.push_back(static_cast<long long>(bad.size()));
  return code;
}

}  // namespace

Tableau make_leaf_only(Tableau t, const std::vector<Literal>& s_in,
                       TransformTrace* trace) {
  std::set<Literal> s;
  for (const auto& l : s_in) {
    if (s.count(l.complement()))
      throw LogicError("leaf-only: set contains a complementary pair " +
                       l.str());
    s.insert(l);
  }
  if (!is_closed(t)) throw LogicError("leaf-only: input tableau is not closed");

  std::vector<long long> prev_measure;
  for (int round = 0; round < kMaxRounds; ++round) {
    // step 1: first inner node with label in the set, in pre-order
    int n = -1;
    for (int id : t.pre_order()) {
      const TabNode& nd = t.node(id);
      if (nd.lit && t.is_inner(id) && s.count(*nd.lit)) {
        n = id;
        break;
      }
    }
    if (n < 0) break;
    int nprime = t.node(n).parent;
    size_t before = t.node_count();
    std::vector<long long> measure = leafonly_measure(t, nprime, s);
    if (trace && !prev_measure.empty() &&
        !std::lexicographical_compare(measure.begin(), measure.end(),
                                      prev_measure.begin(),
                                      prev_measure.end()))
      trace->measure_monotone = false;
    prev_measure = measure;

    // step 2: fresh copy of the subtree at nprime, with the edges of the
    // node corresponding to n removed
    std::map<int, int> mapping;
    int u = copy_subtree(t, nprime, mapping);
    t.remove_children(mapping.at(n));

    // step 3: replace the edges of nprime by those of n
    Literal nlit = *t.node(n).lit;
    Literal complement = nlit.complement();
    std::vector<int> moved = t.node(n).children;
    t.node_mut(n).children.clear();
    for (int k : moved) t.node_mut(k).parent = -1;
    t.remove_children(nprime);
    for (int k : moved) {
      t.node_mut(k).parent = nprime;
      t.node_mut(nprime).children.push_back(k);
    }

    // step 4: expand matching leaves below nprime with copies of u
    std::vector<int> targets;
    std::function<void(int)> collect = [&](int cur) {
      for (int c : t.node(cur).children) {
        if (t.is_leaf(c) && t.node(c).lit && *t.node(c).lit == complement)
          targets.push_back(c);
        collect(c);
      }
    };
    collect(nprime);
    for (int m : targets) {
      std::map<int, int> copy_map;
      int uprime = copy_subtree(t, u, copy_map);
      reparent_children(t, uprime, m);
      t.remove_subtree(uprime);  // the copied root itself is discarded
    }
    t.remove_subtree(u);

    // step 5: restore eagerness and regularity
    t = remove_uneagerness(std::move(t), trace);
    t = remove_irregularities(std::move(t), trace);
    std::vector<long long> measure_after =
        t.has_node(nprime) ? leafonly_measure(t, nprime, s)
                           : std::vector<long long>{};
    if (trace && !std::lexicographical_compare(
                     measure_after.begin(), measure_after.end(),
                     measure.begin(), measure.end()))
      trace->measure_decreased_each_round = false;
    trace_round(trace, "leaf-only", {n, nprime}, before, t.node_count(),
                std::move(measure), std::move(measure_after), &t);
  }
  t = assign_targets(std::move(t));
  if (!check_leaf_only(t, s).ok)
    throw LogicError("leaf-only: conversion did not converge");
  return t;
}

namespace {

// The three structural preconditions on a contiguity pair; returns L0.
Literal validate_pair(const Tableau& t, const Literal& l1, const Literal& l2) {
  std::set<Literal> labels = t.labels();
  if (!labels.count(l1) || !labels.count(l2))
    throw LogicError("contiguity: pair member does not occur as a label: {" +
                     l1.str() + ", " + l2.str() + "}");
  std::optional<Literal> l0;
  for (int id : t.pre_order()) {
    if (t.is_leaf(id) || t.node(id).empty_clause) continue;
    Clause c = t.clause_of(id);
    bool relevant = false;
    for (const auto& l : c)
      if (l == l1 || l == l2) relevant = true;
    if (!relevant) continue;
    if (c.size() != 2)
      throw LogicError("contiguity: clause with pair member is not binary: " +
                       clause_str(c));
    Literal other = (c[0] == l1 || c[0] == l2) ? c[1] : c[0];
    Literal member = (other == c[1]) ? c[0] : c[1];
    if (member != l1 && member != l2)
      throw LogicError("contiguity: clause mixes pair members: " +
                       clause_str(c));
    if (l0 && !(*l0 == other))
      throw LogicError("contiguity: no common companion literal for {" +
                       l1.str() + ", " + l2.str() + "}");
    l0 = other;
  }
  if (!l0)
    throw LogicError("contiguity: no clause contains the pair members");
  for (int id : t.pre_order())
    if (t.node(id).lit && *t.node(id).lit == *l0 && t.is_inner(id))
      throw LogicError("contiguity: companion literal " + l0->str() +
                       " labels an inner node");
  return *l0;
}

}  // namespace

Tableau make_contiguous(Tableau t,
                        const std::vector<std::pair<Literal, Literal>>& pairs,
                        TransformTrace* trace) {
  for (const auto& [l1, l2] : pairs) validate_pair(t, l1, l2);

  for (int round = 0; round < kMaxRounds; ++round) {
    // first inner node with a pair partner strictly below a child
    int n = -1, m = -1;
    for (int id : t.pre_order()) {
      const TabNode& nd = t.node(id);
      if (!nd.lit || t.is_leaf(id)) continue;
      std::optional<Literal> partner;
      for (const auto& [l1, l2] : pairs) {
        if (*nd.lit == l1) partner = l2;
        if (*nd.lit == l2) partner = l1;
        if (partner) break;
      }
      if (!partner) continue;
      std::function<int(int, int)> find = [&](int cur, int rel) -> int {
        for (int c : t.node(cur).children) {
          const TabNode& cn = t.node(c);
          if (cn.lit && *cn.lit == *partner && rel + 1 >= 2) return c;
          int r = find(c, rel + 1);
          if (r >= 0) return r;
        }
        return -1;
      };
      int found = find(id, 0);
      if (found >= 0) {
        n = id;
        m = found;
        break;
      }
    }
    if (n < 0) break;
    size_t before = t.node_count();

    // sibling of m supplies the companion node labels
    int mparent = t.node(m).parent;
    int sibling = -1;
    for (int c : t.node(mparent).children)
      if (c != m) sibling = c;
    if (sibling < 0)
      throw LogicError("contiguity: pair node without a sibling");

    TabNode m0;
    m0.id = t.fresh_id();
    m0.lit = t.node(sibling).lit;
    m0.side = t.node(sibling).side;
    m0.meta = t.node(sibling).meta;
    TabNode mp;
    mp.id = t.fresh_id();
    mp.lit = t.node(m).lit;
    mp.side = t.node(m).side;
    mp.meta = t.node(m).meta;
    m0.parent = n;
    mp.parent = n;
    t.insert_node(m0);
    t.insert_node(mp);

    // move the edges of n to m-prime, then attach the two fresh children
    std::vector<int> moved = t.node(n).children;
    t.node_mut(n).children.clear();
    for (int k : moved) {
      t.node_mut(k).parent = mp.id;
      t.node_mut(mp.id).children.push_back(k);
    }
    t.node_mut(n).children = {m0.id, mp.id};

    trace_round(trace, "contiguous", {n, m}, before, t.node_count(), {}, {},
                &t);
    t = remove_irregularities(std::move(t), trace);
  }
  return assign_targets(std::move(t));
}

std::vector<std::pair<Literal, Literal>> structural_contiguity_pairs(
    const Tableau& t) {
  // group second literals of binary clauses by a shared leaf-only companion
  std::map<Literal, std::set<Literal>> groups;
  std::set<Literal> inner_labels;
  for (int id : t.pre_order())
    if (t.node(id).lit && t.is_inner(id)) inner_labels.insert(*t.node(id).lit);
  std::set<Clause> clauses;
  for (int id : t.pre_order())
    if (t.is_inner(id) && !t.node(id).empty_clause)
      clauses.insert(t.clause_of(id));
  for (const auto& c : clauses) {
    if (c.size() != 2) continue;
    for (int i = 0; i < 2; ++i) {
      const Literal& l0 = c[i];
      const Literal& lx = c[1 - i];
      if (inner_labels.count(l0)) continue;  // companion must be leaf-only
      groups[l0].insert(lx);
    }
  }
  std::vector<std::pair<Literal, Literal>> pairs;
  for (const auto& [l0, lits] : groups) {
    std::vector<Literal> v(lits.begin(), lits.end());
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j) {
        try {
          Tableau probe = t;
          validate_pair(probe, v[i], v[j]);
          pairs.push_back({v[i], v[j]});
        } catch (const LogicError&) {
          // shape does not qualify
        }
      }
  }
  return pairs;
}

Tableau to_aci(Tableau t, const AciContext& ctx, TransformTrace* trace) {
  t = remove_uneagerness(std::move(t), trace);
  t = remove_irregularities(std::move(t), trace);
  std::set<Literal> negs = negative_labels(t);
  t = make_leaf_only(std::move(t),
                     std::vector<Literal>(negs.begin(), negs.end()), trace);
  t = make_contiguous(std::move(t), contiguity_pairs(t, ctx), trace);
  return t;
}

Tableau to_aci_auto(Tableau t, TransformTrace* trace) {
  t = remove_uneagerness(std::move(t), trace);
  t = remove_irregularities(std::move(t), trace);
  std::set<Literal> negs = negative_labels(t);
  t = make_leaf_only(std::move(t),
                     std::vector<Literal>(negs.begin(), negs.end()), trace);
  t = make_contiguous(std::move(t), structural_contiguity_pairs(t), trace);
  return t;
}

}  // namespace tabipol
