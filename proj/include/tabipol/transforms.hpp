#ifndef TABIPOL_TRANSFORMS_HPP
#define TABIPOL_TRANSFORMS_HPP

#include <string>
#include <vector>

#include "tabipol/tableau.hpp"

namespace tabipol {

struct AciContext;  // access.hpp

struct TransformTrace {
  struct Entry {
    std::string proc;
    std::vector<int> nodes;  // ids touched in the round
    size_t nodes_before = 0;
    size_t nodes_after = 0;
    // leaf-only rounds: position code of the round's parent node followed by
    // the count of offending labels below it, taken at round start and at
    // round end
    std::vector<long long> measure;
    std::vector<long long> measure_after;
  };
  std::vector<Entry> entries;
  bool keep_snapshots = false;
  std::vector<Tableau> snapshots;  // one per round when enabled
  // every leaf-only round shrank the measure of its own parent node
  bool measure_decreased_each_round = true;
  // consecutive rounds' measures also shrank; this can fail when a round
  // returns to an ancestor of the previous round's parent
  bool measure_monotone = true;

  std::string str() const;
};

// Prunes the subtrees below closed inner nodes until no closed node has a
// closed descendant. Preserves closed, regular, leaf-only.
Tableau remove_uneagerness(Tableau t, TransformTrace* trace = nullptr);

// Replaces the edges of the parent of a node that duplicates an ancestor
// label by the edges of that node, until no duplicates remain. Expects an
// eager input; preserves closed, eager, leaf-only.
Tableau remove_irregularities(Tableau t, TransformTrace* trace = nullptr);

// Copies subtrees so that the given pairwise non-complementary literals
// occur at leaves only. Input must be closed, eager and regular.
Tableau make_leaf_only(Tableau t, const std::vector<Literal>& s,
                       TransformTrace* trace = nullptr);

// Restructures so that both members of each pair are parent and child
// whenever they share a branch. The pairs must satisfy: both occur as
// labels; all clauses containing either have the shape L0 | L1 or L0 | L2
// for one literal L0; all L0 nodes are leaves.
Tableau make_contiguous(Tableau t,
                        const std::vector<std::pair<Literal, Literal>>& pairs,
                        TransformTrace* trace = nullptr);

// Eagerness, regularity, leaf-only for all negative labels, contiguity for
// the guard/definer pairs derived from the context.
Tableau to_aci(Tableau t, const AciContext& ctx,
               TransformTrace* trace = nullptr);

// Context-free variant: contiguity pairs are discovered structurally from
// the clause shapes of the tableau itself.
Tableau to_aci_auto(Tableau t, TransformTrace* trace = nullptr);

std::vector<std::pair<Literal, Literal>> structural_contiguity_pairs(
    const Tableau& t);

}  // namespace tabipol

#endif
