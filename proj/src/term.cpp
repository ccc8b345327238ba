#include "tabipol/term.hpp"

#include <algorithm>
#include <sstream>

namespace tabipol {

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->var = true;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::fun(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->var = false;
  n->name = std::move(name);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::ground() const {
  if (is_var()) return false;
  for (const auto& a : args())
    if (!a.ground()) return false;
  return true;
}

int Term::size() const {
  int s = 1;
  for (const auto& a : args()) s += a.size();
  return s;
}

bool Term::contains(const Term& s) const {
  if (*this == s) return true;
  for (const auto& a : args())
    if (a.contains(s)) return true;
  return false;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->var != o.node_->var || node_->name != o.node_->name) return false;
  if (node_->args.size() != o.node_->args.size()) return false;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == o.node_->args[i])) return false;
  return true;
}

bool Term::operator<(const Term& o) const {
  if (node_ == o.node_) return false;
  if (node_->var != o.node_->var) return node_->var && !o.node_->var;
  if (node_->name != o.node_->name) return node_->name < o.node_->name;
  return std::lexicographical_compare(node_->args.begin(), node_->args.end(),
                                      o.node_->args.begin(),
                                      o.node_->args.end());
}

std::string Term::str() const {
  if (is_var() || args().empty()) return name();
  std::ostringstream os;
  os << name() << '(';
  for (size_t i = 0; i < args().size(); ++i) {
    if (i) os << ',';
    os << args()[i].str();
  }
  os << ')';
  return os.str();
}

bool Literal::ground() const {
  for (const auto& a : args)
    if (!a.ground()) return false;
  return true;
}

std::string Literal::str() const {
  std::string s = positive ? "" : "~";
  s += pred;
  if (!args.empty()) {
    s += '(';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ',';
      s += args[i].str();
    }
    s += ')';
  }
  return s;
}

bool Literal::operator==(const Literal& o) const {
  return positive == o.positive && pred == o.pred && args == o.args;
}

bool Literal::operator<(const Literal& o) const {
  if (pred != o.pred) return pred < o.pred;
  if (positive != o.positive) return !positive && o.positive;
  return args < o.args;
}

std::string clause_str(const Clause& c) {
  if (c.empty()) return "false";
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += " | ";
    s += c[i].str();
  }
  return s;
}

void Substitution::set(const std::string& var, const Term& t) {
  if (t.is_var() && t.name() == var) {
    bind_.erase(var);
    return;
  }
  bind_.insert_or_assign(var, t);
}

std::optional<Term> Substitution::lookup(const std::string& var) const {
  auto it = bind_.find(var);
  if (it == bind_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> Substitution::domain() const {
  std::set<std::string> d;
  for (const auto& [v, t] : bind_) d.insert(v);
  return d;
}

std::vector<Term> Substitution::range() const {
  std::vector<Term> r;
  r.reserve(bind_.size());
  for (const auto& [v, t] : bind_) r.push_back(t);
  return r;
}

bool Substitution::injective() const {
  std::set<Term> seen;
  for (const auto& [v, t] : bind_)
    if (!seen.insert(t).second) return false;
  return true;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_var()) {
    auto b = lookup(t.name());
    return b ? *b : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(a));
  return Term::fun(t.name(), std::move(args));
}

Literal Substitution::apply(const Literal& l) const {
  std::vector<Term> args;
  args.reserve(l.args.size());
  for (const auto& a : l.args) args.push_back(apply(a));
  return Literal(l.positive, l.pred, std::move(args));
}

Clause Substitution::apply(const Clause& c) const {
  Clause r;
  r.reserve(c.size());
  for (const auto& l : c) r.push_back(apply(l));
  return r;
}

Substitution Substitution::restrict_to(
    const std::set<std::string>& vars) const {
  Substitution r;
  for (const auto& [v, t] : bind_)
    if (vars.count(v)) r.set(v, t);
  return r;
}

std::string Substitution::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, t] : bind_) {
    if (!first) s += ", ";
    first = false;
    s += v + " -> " + t.str();
  }
  return s + "}";
}

namespace {

// Preimage lookup: which variable maps to t?
std::optional<std::string> preimage(const Substitution& s, const Term& t) {
  for (const auto& [v, u] : s.bindings())
    if (u == t) return v;
  return std::nullopt;
}

Term inverse_subst_rec(const Term& t, const Substitution& s) {
  if (auto v = preimage(s, t)) return Term::var(*v);
  if (t.is_var() || t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(inverse_subst_rec(a, s));
  return Term::fun(t.name(), std::move(args));
}

}  // namespace

Term inverse_subst(const Term& t, const Substitution& s) {
  if (!s.injective()) throw LogicError("inverse substitution: not injective");
  return inverse_subst_rec(t, s);
}

Literal inverse_subst(const Literal& l, const Substitution& s) {
  if (!s.injective()) throw LogicError("inverse substitution: not injective");
  std::vector<Term> args;
  args.reserve(l.args.size());
  for (const auto& a : l.args) args.push_back(inverse_subst_rec(a, s));
  return Literal(l.positive, l.pred, std::move(args));
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

void collect_funs(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  out.insert(t.name());
  for (const auto& a : t.args()) collect_funs(a, out);
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> s;
  collect_vars(t, s);
  return s;
}

std::set<std::string> literal_vars(const Literal& l) {
  std::set<std::string> s;
  for (const auto& a : l.args) collect_vars(a, s);
  return s;
}

std::set<std::string> clause_vars(const Clause& c) {
  std::set<std::string> s;
  for (const auto& l : c)
    for (const auto& a : l.args) collect_vars(a, s);
  return s;
}

std::set<std::string> clause_funs(const Clause& c) {
  std::set<std::string> s;
  for (const auto& l : c)
    for (const auto& a : l.args) collect_funs(a, s);
  return s;
}

bool match_term(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_var()) {
    if (auto b = s.lookup(pattern.name())) return *b == target;
    if (target.is_var() && target.name() == pattern.name()) return true;
    s.set(pattern.name(), target);
    return true;
  }
  if (target.is_var() || pattern.name() != target.name() ||
      pattern.args().size() != target.args().size())
    return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], target.args()[i], s)) return false;
  return true;
}

bool match_literal(const Literal& pattern, const Literal& target,
                   Substitution& s) {
  if (pattern.positive != target.positive || pattern.pred != target.pred ||
      pattern.args.size() != target.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], target.args[i], s)) return false;
  return true;
}

bool match_clause(const Clause& pattern, const Clause& target,
                  Substitution& s) {
  if (pattern.size() != target.size()) return false;
  for (size_t i = 0; i < pattern.size(); ++i)
    if (!match_literal(pattern[i], target[i], s)) return false;
  return true;
}

}  // namespace tabipol
