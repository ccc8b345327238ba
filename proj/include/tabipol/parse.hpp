#ifndef TABIPOL_PARSE_HPP
#define TABIPOL_PARSE_HPP

#include <cstddef>
#include <string>

#include "tabipol/formula.hpp"
#include "tabipol/term.hpp"

namespace tabipol {

struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, SourceSpan span)
      : std::runtime_error(what), span(span) {}
  SourceSpan span;
};

// Concrete grammar (binding strength high to low: ~, &, |, ->, <->):
//
//   formula  := iff
//   iff      := imp ('<->' imp)*                 left-associative
//   imp      := disj ('->' imp)?                 right-associative
//   disj     := conj ('|' conj)*
//   conj     := unary ('&' unary)*
//   unary    := '~' unary | ('all'|'ex') VAR '.' formula | primary
//   primary  := 'true' | 'false' | atom | '(' formula ')'
//   atom     := PREDNAME ('(' term (',' term)* ')')?
//   term     := VAR | FUNNAME ('(' term (',' term)* ')')?
//
// Variables start with an uppercase letter or '_'; predicate and function
// names start with a lowercase letter. Quantifiers scope maximally to the
// right. '->' and '<->' are expanded at parse time. Arities must be used
// consistently throughout one input.
Formula parse_formula(const std::string& text);

// Round trip: parse_formula(print_formula(f)) is structurally equal to f for
// plain formulas; relativized quantifiers print as their plain unfolding.
std::string print_formula(const Formula& f);

Term parse_term(const std::string& text);
Literal parse_literal(const std::string& text);

}  // namespace tabipol

#endif
