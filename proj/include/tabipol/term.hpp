#ifndef TABIPOL_TERM_HPP
#define TABIPOL_TERM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tabipol {

// Raised on violated preconditions of logic operations (capture,
// non-injective inverse substitutions, malformed inputs).
class LogicError : public std::runtime_error {
 public:
  explicit LogicError(const std::string& what) : std::runtime_error(what) {}
};

// First-order term: a variable or a compound with a function symbol.
// Constants are 0-ary compounds. Immutable, shared representation.
class Term {
 public:
  static Term var(std::string name);
  static Term fun(std::string name, std::vector<Term> args = {});
  static Term constant(std::string name) { return fun(std::move(name)); }

  bool is_var() const { return node_->var; }
  bool is_fun() const { return !node_->var; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  bool ground() const;
  // Number of symbol occurrences; a strict subterm always has smaller size.
  int size() const;
  // true iff s occurs in this term (equality counts as occurrence)
  bool contains(const Term& s) const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;

  std::string str() const;

 private:
  struct Node {
    bool var;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Literal {
  bool positive = true;
  std::string pred;
  std::vector<Term> args;

  Literal() = default;
  Literal(bool pos, std::string p, std::vector<Term> a)
      : positive(pos), pred(std::move(p)), args(std::move(a)) {}

  Literal complement() const { return Literal(!positive, pred, args); }
  bool ground() const;
  std::string str() const;

  bool operator==(const Literal& o) const;
  bool operator!=(const Literal& o) const { return !(*this == o); }
  bool operator<(const Literal& o) const;
};

// A clause is a (possibly empty) disjunction; the empty clause is falsity.
using Clause = std::vector<Literal>;

std::string clause_str(const Clause& c);

// Finite mapping from variables to terms; identity outside its domain.
class Substitution {
 public:
  Substitution() = default;

  // Binding x -> x is dropped, keeping domain() exact.
  void set(const std::string& var, const Term& t);
  std::optional<Term> lookup(const std::string& var) const;
  bool empty() const { return bind_.empty(); }

  std::set<std::string> domain() const;
  std::vector<Term> range() const;
  bool injective() const;

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;

  Substitution restrict_to(const std::set<std::string>& vars) const;

  const std::map<std::string, Term>& bindings() const { return bind_; }
  std::string str() const;

 private:
  std::map<std::string, Term> bind_;
};

// E with every occurrence of a range term of s that is not a strict subterm
// of another range-term occurrence replaced by its preimage variable.
// s must be injective.
Term inverse_subst(const Term& t, const Substitution& s);
Literal inverse_subst(const Literal& l, const Substitution& s);

void collect_vars(const Term& t, std::set<std::string>& out);
void collect_funs(const Term& t, std::set<std::string>& out);
std::set<std::string> term_vars(const Term& t);
std::set<std::string> literal_vars(const Literal& l);
std::set<std::string> clause_vars(const Clause& c);
std::set<std::string> clause_funs(const Clause& c);

// One-way matching: extends s so that pattern*s == target, or returns false
// leaving s possibly extended with partial bindings (callers pass a copy).
bool match_term(const Term& pattern, const Term& target, Substitution& s);
bool match_literal(const Literal& pattern, const Literal& target,
                   Substitution& s);
// Literal-by-literal in order, one consistent substitution.
bool match_clause(const Clause& pattern, const Clause& target,
                  Substitution& s);

}  // namespace tabipol

#endif
