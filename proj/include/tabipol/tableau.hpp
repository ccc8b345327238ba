#ifndef TABIPOL_TABLEAU_HPP
#define TABIPOL_TABLEAU_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabipol/term.hpp"

namespace tabipol {

enum class Side { Red, Blue };

inline const char* side_name(Side s) { return s == Side::Red ? "red" : "blue"; }
inline Side other_side(Side s) { return s == Side::Red ? Side::Blue : Side::Red; }

struct GlobalPosition {
  Side side = Side::Red;
  std::vector<int> path;

  std::string str() const;
  bool operator==(const GlobalPosition& o) const {
    return side == o.side && path == o.path;
  }
  bool operator<(const GlobalPosition& o) const {
    if (side != o.side) return side < o.side;
    return path < o.path;
  }
};

// Provenance of a tableau clause within a definitional clause form.
struct ClauseMeta {
  GlobalPosition pos;
  int form = 0;  // 1..8
  bool operator==(const ClauseMeta& o) const {
    return pos == o.pos && form == o.form;
  }
};

struct TabNode {
  int id = 0;
  int parent = -1;
  std::optional<Literal> lit;   // absent only at the root
  std::optional<Side> side;
  std::optional<int> tgt;       // id of the closing ancestor
  std::optional<ClauseMeta> meta;
  std::vector<int> children;
  // Set when this node was expanded with the empty clause of the given side;
  // such a node has no children but counts as an inner node.
  std::optional<Side> empty_clause;
};

// Ordered tree of literal-labeled nodes. Node ids are stable; transformation
// passes allocate fresh ids from the same counter.
class Tableau {
 public:
  Tableau() { nodes_.emplace(0, TabNode{}); }

  int root() const { return 0; }
  const TabNode& node(int id) const { return nodes_.at(id); }
  TabNode& node_mut(int id) { return nodes_.at(id); }
  bool has_node(int id) const { return nodes_.count(id) != 0; }
  size_t node_count() const { return nodes_.size(); }

  int add_child(int parent, Literal lit, std::optional<Side> side = {},
                std::optional<ClauseMeta> meta = {});
  int fresh_id() { return next_id_++; }
  void insert_node(TabNode n);  // id/parent/children prewired by the caller
  // Detaches and deletes the subtree rooted at id.
  void remove_subtree(int id);
  // Drops the subtrees below id, keeping the node itself.
  void remove_children(int id);

  bool is_leaf(int id) const {
    const TabNode& n = node(id);
    return n.children.empty() && !n.empty_clause;
  }
  bool is_inner(int id) const { return !is_leaf(id); }

  std::vector<int> pre_order() const;
  // Ancestors of id from the root downwards, excluding id.
  std::vector<int> ancestors(int id) const;
  int depth(int id) const;

  // Disjunction of the children labels in left-to-right order.
  Clause clause_of(int id) const;
  // Conjunction of literals with the given side (or all labeled nodes when
  // side is empty) on the branch from the root to id, inclusive.
  std::vector<Literal> branch_literals(int id,
                                       std::optional<Side> side = {}) const;

  std::set<Literal> labels() const;

  std::string str() const;  // indented text rendering

 private:
  std::map<int, TabNode> nodes_;
  int next_id_ = 1;
};

struct TableauDiagnostics {
  bool ok = true;
  // (property, offending node id, detail)
  std::vector<std::tuple<std::string, int, std::string>> violations;

  void fail(const std::string& prop, int node, const std::string& detail) {
    ok = false;
    violations.push_back({prop, node, detail});
  }
  std::string str() const;
};

// Sets tgt on every node that has an ancestor with complementary label,
// choosing the nearest such ancestor. Existing targets are recomputed.
Tableau assign_targets(Tableau t);
// All leaves closed (target assigned or assignable).
bool is_closed(const Tableau& t);

TableauDiagnostics check_regular(const Tableau& t);
TableauDiagnostics check_leaf_only(const Tableau& t,
                                   const std::set<Literal>& s);
TableauDiagnostics check_contiguous(
    const Tableau& t, const std::vector<std::pair<Literal, Literal>>& pairs);
TableauDiagnostics check_eager(const Tableau& t);

// Regular and leaf-only for all negative literals occurring as labels.
bool is_positive_hyper(const Tableau& t);

std::set<Literal> negative_labels(const Tableau& t);

// Structural validity: every clause of the tableau is an instance of an
// input clause (checked against the given clause list), sides consistent
// among siblings.
struct InputClause {
  Clause clause;
  std::optional<Side> side;
  std::optional<ClauseMeta> meta;
};
TableauDiagnostics check_tableau_for(const Tableau& t,
                                     const std::vector<InputClause>& inputs);

// Instantiates every literal label: uniform mapping of all free variables to
// the constant k, overridden per variable by the given map.
Tableau ground_tableau(const Tableau& t, const std::string& k,
                       const std::map<std::string, Term>& per_var = {});

enum class SidePolicy { PreferRed, PreferBlue };

// Matches every tableau clause against the input clauses and labels the
// children with the side (and meta) of the matched input. Ambiguities are
// resolved by the policy; an unmatched clause raises LogicError.
Tableau assign_sides(Tableau t, const std::vector<InputClause>& inputs,
                     SidePolicy policy = SidePolicy::PreferRed);

// Canonical form for comparisons that ignore child order.
std::string canonical_key(const Tableau& t);
bool equal_modulo_child_order(const Tableau& a, const Tableau& b);

}  // namespace tabipol

#endif
