#ifndef TABIPOL_CLAUSIFY_HPP
#define TABIPOL_CLAUSIFY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabipol/formula.hpp"
#include "tabipol/tableau.hpp"

namespace tabipol {

struct ClausalForm {
  std::vector<Clause> clauses;
  // parallel to clauses; set by the definitional conversion only
  std::vector<std::optional<ClauseMeta>> meta;
  std::set<std::string> skolem_funs;
  std::optional<Side> side;
  std::set<std::string> definer_preds;

  void push(Clause c, std::optional<ClauseMeta> m = {}) {
    clauses.push_back(std::move(c));
    meta.push_back(std::move(m));
  }
  std::string str() const;
};

// Flat list of side-annotated input clauses for provers and side assignment.
std::vector<InputClause> make_clause_set(const ClausalForm& red,
                                         const ClausalForm& blue);

// NNF, inner Skolemization, distribution to CNF. No renaming of subformulas.
// Every clause variable is implicitly universally quantified.
ClausalForm clausify(const Formula& sentence, Namer& namer);

class NotRelativized : public LogicError {
 public:
  explicit NotRelativized(const std::string& what) : LogicError(what) {}
};

// Recognizes formulas with relativized quantifiers: quantifier blocks must
// have the shape all vs.(~R | F) or ex vs.(R & F) with every quantified
// variable in the guard atom R; bare literals become empty relativizations.
// Input must be relational. Throws NotRelativized otherwise.
Formula to_relativized(const Formula& f);

// Negation with the rewriting that keeps relativized shape.
Formula negate_relativized(const Formula& f);

// Per-position data of the definitional conversion.
struct DefPosition {
  GlobalPosition pos;
  Formula::Kind kind;                 // shape of the subformula
  std::vector<std::string> xp;        // free variables, standard order
  std::string definer;                // name of d_p
  std::vector<std::string> vp;        // quantified variables (rel kinds)
  std::optional<Literal> guard;       // R_p (with variables)
  Substitution sigma;                 // Skolemizing substitution (exists)
  std::optional<Literal> guard_sk;    // R_p sigma_p
  std::optional<Literal> child_sk;    // D_p1 sigma_p (absent if child true)

  explicit DefPosition(Formula::Kind k = Formula::Kind::True) : kind(k) {}
};

struct DefClausalForm {
  ClausalForm cf;
  std::map<std::vector<int>, DefPosition> positions;
  // the definitional sentence (before Skolemization)
  Formula defp = Formula::truth();
};

// Structure-preserving clausification of a relativized sentence. Clauses
// carry (position, form) metadata with forms 1..8:
//   1 root unit, 2 negated definer unit, 3/4 conjunction members,
//   5 disjunction, 6 universal guard, 7/8 existential guard/body.
// Definer atoms for subformulas equal to true are elided.
DefClausalForm definitional_clausify(const Formula& relativized_sentence,
                                          Side side, Namer& namer);

// Equality encoded as predicate eq/2: reflexivity, symmetry, transitivity on
// both sides; substitutivity per symbol on the side(s) where it occurs.
// Inputs without eq are returned unchanged.
std::pair<ClausalForm, ClausalForm> add_equality_axioms(ClausalForm red,
                                                        ClausalForm blue);

inline const char* kEqualityPred = "eq";

}  // namespace tabipol

#endif
