#include "tabipol/tableau.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tabipol {

std::string GlobalPosition::str() const {
  std::string s = side == Side::Red ? "L" : "R";
  if (path.empty()) return s + "e";
  for (int i : path) s += "_" + std::to_string(i);
  return s;
}

int Tableau::add_child(int parent, Literal lit, std::optional<Side> side,
                       std::optional<ClauseMeta> meta) {
  TabNode n;
  n.id = next_id_++;
  n.parent = parent;
  n.lit = std::move(lit);
  n.side = side;
  n.meta = std::move(meta);
  nodes_.at(parent).children.push_back(n.id);
  int id = n.id;
  nodes_.emplace(id, std::move(n));
  return id;
}

void Tableau::insert_node(TabNode n) {
  int id = n.id;
  if (id >= next_id_) next_id_ = id + 1;
  nodes_.insert_or_assign(id, std::move(n));
}

void Tableau::remove_subtree(int id) {
  const TabNode& n = node(id);
  if (n.parent >= 0) {
    auto& sib = nodes_.at(n.parent).children;
    sib.erase(std::remove(sib.begin(), sib.end(), id), sib.end());
  }
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int c : nodes_.at(cur).children) stack.push_back(c);
    nodes_.erase(cur);
  }
}

void Tableau::remove_children(int id) {
  std::vector<int> kids = node(id).children;
  nodes_.at(id).children.clear();
  for (int c : kids) {
    std::vector<int> stack{c};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int k : nodes_.at(cur).children) stack.push_back(k);
      nodes_.erase(cur);
    }
  }
}

std::vector<int> Tableau::pre_order() const {
  std::vector<int> out;
  out.reserve(nodes_.size());
  std::function<void(int)> rec = [&](int id) {
    out.push_back(id);
    for (int c : node(id).children) rec(c);
  };
  rec(root());
  return out;
}

std::vector<int> Tableau::ancestors(int id) const {
  std::vector<int> up;
  for (int p = node(id).parent; p >= 0; p = node(p).parent) up.push_back(p);
  std::reverse(up.begin(), up.end());
  return up;
}

int Tableau::depth(int id) const {
  int d = 0;
  for (int p = node(id).parent; p >= 0; p = node(p).parent) ++d;
  return d;
}

Clause Tableau::clause_of(int id) const {
  const TabNode& n = node(id);
  if (is_leaf(id)) throw LogicError("clause_of: node is a leaf");
  Clause c;
  for (int k : n.children) c.push_back(*node(k).lit);
  return c;
}

std::vector<Literal> Tableau::branch_literals(int id,
                                              std::optional<Side> side) const {
  std::vector<Literal> out;
  std::vector<int> path = ancestors(id);
  path.push_back(id);
  for (int n : path) {
    const TabNode& nd = node(n);
    if (!nd.lit) continue;
    if (side && nd.side != side) continue;
    out.push_back(*nd.lit);
  }
  return out;
}

std::set<Literal> Tableau::labels() const {
  std::set<Literal> out;
  for (int id : pre_order())
    if (node(id).lit) out.insert(*node(id).lit);
  return out;
}

std::string Tableau::str() const {
  std::ostringstream os;
  std::function<void(int, int)> rec = [&](int id, int ind) {
    const TabNode& n = node(id);
    for (int i = 0; i < ind; ++i) os << "  ";
    if (!n.lit)
      os << "<root>";
    else
      os << n.lit->str();
    if (n.side) os << " [" << side_name(*n.side) << "]";
    if (n.tgt) os << " ->" << *n.tgt;
    os << "  #" << id << "\n";
    for (int c : n.children) rec(c, ind + 1);
  };
  rec(root(), 0);
  return os.str();
}

std::string TableauDiagnostics::str() const {
  if (ok) return "ok";
  std::string s;
  for (const auto& [prop, id, detail] : violations) {
    s += prop + " violated at node " + std::to_string(id);
    if (!detail.empty()) s += " (" + detail + ")";
    s += "\n";
  }
  return s;
}

Tableau assign_targets(Tableau t) {
  for (int id : t.pre_order()) {
    TabNode& n = t.node_mut(id);
    n.tgt.reset();
    if (!n.lit) continue;
    Literal want = n.lit->complement();
    // nearest qualifying ancestor
    for (int p = n.parent; p >= 0; p = t.node(p).parent) {
      if (t.node(p).lit && *t.node(p).lit == want) {
        n.tgt = p;
        break;
      }
    }
  }
  return t;
}

bool is_closed(const Tableau& t) {
  for (int id : t.pre_order()) {
    if (!t.is_leaf(id)) continue;
    const TabNode& n = t.node(id);
    if (!n.lit) return false;  // bare unextended root
    Literal want = n.lit->complement();
    bool closed = false;
    for (int p = n.parent; p >= 0; p = t.node(p).parent)
      if (t.node(p).lit && *t.node(p).lit == want) {
        closed = true;
        break;
      }
    if (!closed) return false;
  }
  return true;
}

TableauDiagnostics check_regular(const Tableau& t) {
  TableauDiagnostics d;
  std::function<void(int, std::vector<Literal>&)> rec =
      [&](int id, std::vector<Literal>& branch) {
        const TabNode& n = t.node(id);
        if (n.lit) {
          for (const auto& l : branch)
            if (l == *n.lit) {
              d.fail("regular", id, "duplicate label " + n.lit->str());
              break;
            }
          branch.push_back(*n.lit);
        }
        for (int c : n.children) rec(c, branch);
        if (n.lit) branch.pop_back();
      };
  std::vector<Literal> branch;
  rec(t.root(), branch);
  return d;
}

TableauDiagnostics check_leaf_only(const Tableau& t,
                                   const std::set<Literal>& s) {
  TableauDiagnostics d;
  for (int id : t.pre_order()) {
    const TabNode& n = t.node(id);
    if (n.lit && t.is_inner(id) && s.count(*n.lit))
      d.fail("leaf-only", id, n.lit->str() + " labels an inner node");
  }
  return d;
}

TableauDiagnostics check_contiguous(
    const Tableau& t, const std::vector<std::pair<Literal, Literal>>& pairs) {
  TableauDiagnostics d;
  for (int id : t.pre_order()) {
    const TabNode& n = t.node(id);
    if (!n.lit) continue;
    for (const auto& [l1, l2] : pairs) {
      std::optional<Literal> partner;
      if (*n.lit == l1)
        partner = l2;
      else if (*n.lit == l2)
        partner = l1;
      if (!partner) continue;
      // every descendant labeled with the partner must be a direct child
      std::function<void(int, int)> scan = [&](int cur, int rel) {
        for (int c : t.node(cur).children) {
          const TabNode& cn = t.node(c);
          if (cn.lit && *cn.lit == *partner && rel + 1 >= 2)
            d.fail("contiguous", c,
                   "pair {" + l1.str() + ", " + l2.str() +
                       "} not parent-child on a branch");
          scan(c, rel + 1);
        }
      };
      scan(id, 0);
    }
  }
  return d;
}

TableauDiagnostics check_eager(const Tableau& t) {
  TableauDiagnostics d;
  Tableau u = assign_targets(t);
  std::function<void(int, bool)> rec = [&](int id, bool closedAbove) {
    const TabNode& n = u.node(id);
    bool closedHere = n.tgt.has_value();
    if (closedHere && closedAbove)
      d.fail("eager", id, "closed node below a closed node");
    for (int c : n.children) rec(c, closedAbove || closedHere);
  };
  rec(u.root(), false);
  return d;
}

std::set<Literal> negative_labels(const Tableau& t) {
  std::set<Literal> s;
  for (const auto& l : t.labels())
    if (!l.positive) s.insert(l);
  return s;
}

bool is_positive_hyper(const Tableau& t) {
  return check_regular(t).ok && check_leaf_only(t, negative_labels(t)).ok;
}

TableauDiagnostics check_tableau_for(const Tableau& t,
                                     const std::vector<InputClause>& inputs) {
  TableauDiagnostics d;
  for (int id : t.pre_order()) {
    const TabNode& n = t.node(id);
    if (n.empty_clause) {
      bool found = false;
      for (const auto& in : inputs)
        if (in.clause.empty()) found = true;
      if (!found) d.fail("clause-instance", id, "empty clause not in inputs");
      continue;
    }
    if (n.children.empty()) continue;
    Clause c = t.clause_of(id);
    bool found = false;
    for (const auto& in : inputs) {
      Substitution s;
      if (match_clause(in.clause, c, s)) {
        found = true;
        break;
      }
    }
    if (!found)
      d.fail("clause-instance", id,
             "clause not an instance of any input: " + clause_str(c));
    std::optional<Side> side = t.node(n.children[0]).side;
    for (int k : n.children)
      if (t.node(k).side != side)
        d.fail("sides", k, "siblings carry different sides");
  }
  if (!is_closed(t)) d.fail("closed", t.root(), "open leaf present");
  return d;
}

Tableau ground_tableau(const Tableau& t, const std::string& k,
                       const std::map<std::string, Term>& per_var) {
  Tableau u = t;
  // collect free variables
  std::set<std::string> vars;
  for (int id : u.pre_order())
    if (u.node(id).lit)
      for (const auto& v : literal_vars(*u.node(id).lit)) vars.insert(v);
  Substitution s;
  for (const auto& v : vars) {
    auto it = per_var.find(v);
    s.set(v, it != per_var.end() ? it->second : Term::constant(k));
  }
  for (int id : u.pre_order()) {
    TabNode& n = u.node_mut(id);
    if (n.lit) n.lit = s.apply(*n.lit);
  }
  return assign_targets(std::move(u));
}

Tableau assign_sides(Tableau t, const std::vector<InputClause>& inputs,
                     SidePolicy policy) {
  for (int id : t.pre_order()) {
    TabNode& n = t.node_mut(id);
    if (n.empty_clause) continue;
    if (n.children.empty()) continue;
    Clause c = t.clause_of(id);
    std::optional<Side> chosen;
    std::optional<ClauseMeta> meta;
    bool haveRed = false, haveBlue = false;
    std::optional<ClauseMeta> redMeta, blueMeta;
    for (const auto& in : inputs) {
      Substitution s;
      if (!match_clause(in.clause, c, s)) continue;
      if (in.side == Side::Red && !haveRed) {
        haveRed = true;
        redMeta = in.meta;
      } else if (in.side == Side::Blue && !haveBlue) {
        haveBlue = true;
        blueMeta = in.meta;
      }
    }
    if (!haveRed && !haveBlue)
      throw LogicError("assign_sides: tableau clause matches no input: " +
                       clause_str(c));
    if (haveRed && (!haveBlue || policy == SidePolicy::PreferRed)) {
      chosen = Side::Red;
      meta = redMeta;
    } else {
      chosen = Side::Blue;
      meta = blueMeta;
    }
    for (int k : t.node(id).children) {
      t.node_mut(k).side = chosen;
      t.node_mut(k).meta = meta;
    }
  }
  return t;
}

namespace {

std::string canon_rec(const Tableau& t, int id) {
  const TabNode& n = t.node(id);
  std::string s = "(";
  if (n.lit) s += n.lit->str();
  if (n.side) s += std::string("@") + side_name(*n.side);
  if (n.empty_clause) s += std::string("!") + side_name(*n.empty_clause);
  std::vector<std::string> kids;
  for (int c : n.children) kids.push_back(canon_rec(t, c));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) s += k;
  return s + ")";
}

}  // namespace

std::string canonical_key(const Tableau& t) { return canon_rec(t, t.root()); }

bool equal_modulo_child_order(const Tableau& a, const Tableau& b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace tabipol
