#ifndef TABIPOL_ACCESS_HPP
#define TABIPOL_ACCESS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabipol/clausify.hpp"
#include "tabipol/interpolate.hpp"
#include "tabipol/tableau.hpp"

namespace tabipol {

struct BindingPattern {
  bool existential = true;  // sign +; universal patterns carry sign -
  std::string pred;
  std::set<int> inputs;  // 1-based argument positions not bound by the
                         // associated quantifier

  bool operator==(const BindingPattern& o) const {
    return existential == o.existential && pred == o.pred &&
           inputs == o.inputs;
  }
  bool operator<(const BindingPattern& o) const {
    if (existential != o.existential) return existential < o.existential;
    if (pred != o.pred) return pred < o.pred;
    return inputs < o.inputs;
  }
  std::string str() const;
};

// Patterns of a formula in relativized form.
std::set<BindingPattern> binding_patterns(const Formula& relativized);

// b is covered by c: same sign and predicate, and c demands no input
// position that b does not already provide.
bool covered(const BindingPattern& b, const BindingPattern& c);
bool covered(const std::set<BindingPattern>& bs,
             const std::set<BindingPattern>& cs);

// Shared state of one access-interpolation run: both definitional
// clausifications plus the ground-argument sets of the definitional
// sentences.
struct AciContext {
  Formula f = Formula::truth();        // left input (relativized)
  Formula g = Formula::truth();        // right input (relativized)
  DefClausalForm left;                 // from f
  DefClausalForm right;                // from ~g
  std::set<Term> garg_left;            // garg of the left definitional sentence
  std::set<Term> garg_right;

  const DefClausalForm& side(Side s) const {
    return s == Side::Red ? left : right;
  }
};

AciContext make_aci_context(const Formula& f, const Formula& g, Namer& namer);

// Guard/definer literal pairs that must be contiguous, derived from the
// existential positions of the context and the labels of the tableau.
std::vector<std::pair<Literal, Literal>> contiguity_pairs(
    const Tableau& t, const AciContext& ctx);

// Re-derives side and form metadata of every tableau clause by matching
// against the definitional inputs; raises LogicError for foreign clauses.
Tableau attach_clause_meta(Tableau t, const AciContext& ctx);

// Closed, ground, clause provenance, regular, leaf-only for negative
// labels, contiguity for guard/definer pairs, and the introducer-precedence
// discipline for Skolem-headed ground arguments.
TableauDiagnostics check_aci(const Tableau& t, const AciContext& ctx);

// Interpolant extraction; requires check_aci to pass.
Formula aipol(const Tableau& t, const AciContext& ctx, Namer& namer);

// Extraction rooted at an inner node, for diagnostics and invariant checks.
Formula aipol_at(const Tableau& t, const AciContext& ctx, Namer& namer,
                 int node);

InterpolationResult access_interpolate(const Formula& f, const Formula& g,
                                       const InterpolateOptions& opts = {});

VerificationReport verify_access(const Formula& f, const Formula& g,
                                 const Formula& h, const ProofBudget& budget);

}  // namespace tabipol

#endif
