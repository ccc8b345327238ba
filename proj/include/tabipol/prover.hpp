#ifndef TABIPOL_PROVER_HPP
#define TABIPOL_PROVER_HPP

#include <optional>
#include <vector>

#include "tabipol/clausify.hpp"
#include "tabipol/formula.hpp"
#include "tabipol/tableau.hpp"

namespace tabipol {

struct ProofBudget {
  int max_depth = 12;
  long max_inferences = 1'000'000;
  int timeout_ms = 10'000;
};

enum class GoalPolicy { NegativeClauses, AllClauses };

struct ProveStats {
  long inferences = 0;
  int depth_reached = 0;
  bool budget_exhausted = false;  // proof may still exist beyond the budget
};

struct ProveResult {
  std::optional<Tableau> tableau;
  ProveStats stats;
  bool proved() const { return tableau.has_value(); }
};

// Goal-sensitive proof search: iterative deepening over tableau depth,
// extension and reduction steps with sound unification (occurs check),
// regularity pruning. On success the tableau is tightly connected and its
// labels may contain free (rigid) variables.
ProveResult prove_connection(const std::vector<InputClause>& clauses,
                             GoalPolicy policy, const ProofBudget& budget);

// Forward chaining: branches are extended only with clauses whose negative
// literals all have complements on the branch; negative children close
// immediately. Clauses that are not range-restricted are instantiated over
// the Herbrand terms up to an iteratively deepened bound.
ProveResult prove_hyper(const std::vector<InputClause>& clauses,
                        const ProofBudget& budget);

enum class Entailment { Yes, Unknown };

// Refutation of f & ~g; Yes only when a closed tableau was found.
Entailment entails(const Formula& f, const Formula& g,
                   const ProofBudget& budget);

}  // namespace tabipol

#endif
