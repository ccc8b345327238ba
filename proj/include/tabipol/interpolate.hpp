#ifndef TABIPOL_INTERPOLATE_HPP
#define TABIPOL_INTERPOLATE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabipol/clausify.hpp"
#include "tabipol/prover.hpp"

namespace tabipol {

// Raised when the proof search gave up within its budget; distinct from
// "not entailed".
class ProverGaveUp : public std::runtime_error {
 public:
  explicit ProverGaveUp(const std::string& what) : std::runtime_error(what) {}
};

enum class Quant { ForallQ, ExistsQ };

// Data of the ground-to-first-order lifting step.
struct LiftingContext {
  std::set<std::string> f_set;  // functions occurring only left (plus k when flipped)
  std::set<std::string> g_set;  // functions occurring only right plus k
  Substitution stt;             // fresh variables -> maximal replaced terms
  std::vector<std::pair<std::string, Quant>> prefix;  // outermost first
};

struct VerificationReport {
  std::optional<Entailment> left_entailment;   // F |= H
  std::optional<Entailment> right_entailment;  // H |= G
  bool preds_ok = true;
  bool funs_ok = true;
  // access interpolation only
  std::optional<bool> existential_patterns_ok;
  std::optional<bool> universal_patterns_ok;
  std::optional<bool> consts_ok;
  std::vector<std::string> notes;

  bool passed() const;
  std::string str() const;
};

struct InterpolateOptions {
  enum class Prover { Connection, Hyper };
  Prover prover = Prover::Connection;
  bool verify = true;
  bool equality = false;
  bool k_in_f = false;  // place the grounding constant on the left partition
  SidePolicy side_policy = SidePolicy::PreferRed;
  std::map<std::string, Term> grounding;  // per-variable overrides
  ProofBudget budget;
  ProofBudget verify_budget;
};

struct InterpolationResult {
  Formula interpolant;
  Tableau tableau;
  std::optional<VerificationReport> verification;
  LiftingContext lifting;
};

// Ground interpolant of the two clausal formulas a closed two-sided ground
// tableau is for. Requires sides and targets on every node; output is
// simplified by true/false absorption only.
Formula ipol_ground(const Tableau& t);

// Extraction value at a single node, for invariant checks.
Formula ipol_ground_at(const Tableau& t, int node);

// Replaces maximal f/g-terms of a ground formula by quantified variables:
// universal for g-terms, existential for f-terms, prefix ordered so that a
// variable replacing a subterm is quantified before one replacing a superterm.
std::pair<Formula, LiftingContext> lift(const Formula& ground_h,
                                        const std::set<std::string>& f_set,
                                        const std::set<std::string>& g_set,
                                        Namer& namer);

InterpolationResult interpolate(const Formula& f, const Formula& g,
                                const InterpolateOptions& opts = {});

// Interpolation preserving the Horn shape of the first input: proof search
// is forward chaining and the ground interpolant is distributed into a
// conjunction of clauses before lifting.
InterpolationResult interpolate_horn(const Formula& f, const Formula& g,
                                     const InterpolateOptions& opts = {});

bool is_horn_sentence(const Formula& f);

// Distributes | over & in a quantifier-free formula, yielding its clauses.
std::vector<Clause> ground_clauses(const Formula& ground_formula);

VerificationReport verify_craig_lyndon(const Formula& f, const Formula& g,
                                       const Formula& h,
                                       const ProofBudget& budget);

}  // namespace tabipol

#endif
