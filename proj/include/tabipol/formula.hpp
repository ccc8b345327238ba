#ifndef TABIPOL_FORMULA_HPP
#define TABIPOL_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tabipol/term.hpp"

namespace tabipol {

// First-order formula. And/Or are n-ary and kept flattened; Implies/Iff are
// parser sugar and never appear here. ForallRel/ExistsRel are quantifications
// relativized by a guard atom; they are produced by the relativized-formula
// recognizer, not by the parser.
class Formula {
 public:
  enum class Kind {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Forall,
    Exists,
    ForallRel,
    ExistsRel
  };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula atom(const Literal& positive_lit);
  static Formula negation(Formula f);
  // Flattens nested conjunctions; 0 parts give True, 1 part gives the part.
  static Formula conj(std::vector<Formula> parts);
  // Flattens nested disjunctions; 0 parts give False, 1 part gives the part.
  static Formula disj(std::vector<Formula> parts);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  // vars must all occur in the guard atom.
  static Formula forall_rel(std::vector<std::string> vars, Literal guard,
                            Formula body);
  static Formula exists_rel(std::vector<std::string> vars, Literal guard,
                            Formula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  // Atom access.
  const std::string& pred() const { return node_->pred; }
  const std::vector<Term>& args() const { return node_->args; }
  Literal atom_literal() const;  // positive literal for an Atom node

  // Children: Not/Forall/Exists/ForallRel/ExistsRel have one, And/Or have n.
  const std::vector<Formula>& parts() const { return node_->parts; }
  const Formula& child() const { return node_->parts.at(0); }

  const std::string& var() const { return node_->pred; }  // Forall/Exists
  const std::vector<std::string>& rel_vars() const { return node_->rel_vars; }
  Literal guard() const;  // positive guard atom of a relativized quantifier

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  bool operator<(const Formula& o) const;

 private:
  struct Node {
    Kind kind;
    std::string pred;             // Atom/guard predicate, or quantified var
    std::vector<Term> args;       // Atom/guard arguments
    std::vector<Formula> parts;   // subformulas
    std::vector<std::string> rel_vars;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Predicates with polarity, functions (constants included), constants only,
// and terms occurring directly as predicate arguments.
struct Vocabulary {
  std::set<std::pair<std::string, bool>> preds;  // (name, positive?)
  std::set<std::string> funs;
  std::set<std::string> consts;
  std::set<Term> pargs;
};

std::set<std::string> free_vars(const Formula& f);
bool is_sentence(const Formula& f);
Vocabulary vocabulary(const Formula& f);
// Atom occurrences with their polarity.
std::set<Literal> literal_occurrences(const Formula& f);

// Simultaneous substitution; throws LogicError("capture") if a substituted
// term would be captured by a binder.
Formula apply_subst(const Formula& f, const Substitution& s);
Formula inverse_subst(const Formula& f, const Substitution& s);

// Ground members of parg(f).
std::set<Term> garg(const Formula& f);
// Replaces argument-position occurrences of range terms only; requires
// rng(s) within garg(f) and domain variables fresh for f.
Formula top_inverse_subst(const Formula& f, const Substitution& s);

// Replaces ForallRel/ExistsRel by their plain unfoldings.
Formula derelativize(const Formula& f);

bool alpha_equal(const Formula& a, const Formula& b);

// Polarity-aware quantifier occurrence tests (Not flips, relativized
// quantifiers count as their kind).
bool has_existential(const Formula& f);
bool has_universal(const Formula& f);

// True/false absorption only: no other simplification.
Formula fold_constants(const Formula& f);

std::string formula_str(const Formula& f);

// Fresh-name source. Seeded with every symbol of the inputs of a pipeline
// run; generated names are guaranteed unused.
class Namer {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const Formula& f);
  void reserve_all(const Clause& c);

  std::string fresh_var();                       // _v<N>
  std::string fresh(const std::string& base);    // base, base0, base1, ...

 private:
  std::set<std::string> used_;
  int var_counter_ = 0;
};

}  // namespace tabipol

#endif
