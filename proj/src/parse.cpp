#include "tabipol/parse.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace tabipol {

namespace {

struct Token {
  enum Type {
    Ident,     // lowercase-leading
    Var,       // uppercase- or underscore-leading
    LPar,
    RPar,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    End
  };
  Type type;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    size_t start = pos_;
    if (pos_ >= s_.size()) {
      tok_ = {Token::End, "", {start, start}};
      return;
    }
    char c = s_[pos_];
    auto one = [&](Token::Type t) {
      ++pos_;
      tok_ = {t, std::string(1, c), {start, pos_}};
    };
    if (c == '(') return one(Token::LPar);
    if (c == ')') return one(Token::RPar);
    if (c == ',') return one(Token::Comma);
    if (c == '.') return one(Token::Dot);
    if (c == '~') return one(Token::Tilde);
    if (c == '&') return one(Token::Amp);
    if (c == '|') return one(Token::Bar);
    if (c == '-') {
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
        pos_ += 2;
        tok_ = {Token::Arrow, "->", {start, pos_}};
        return;
      }
      throw ParseError("unexpected character '-'", {start, start + 1});
    }
    if (c == '<') {
      if (pos_ + 2 < s_.size() + 1 && s_.compare(pos_, 3, "<->") == 0) {
        pos_ += 3;
        tok_ = {Token::DArrow, "<->", {start, pos_}};
        return;
      }
      throw ParseError("unexpected character '<'", {start, start + 1});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t p = pos_;
      while (p < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_'))
        ++p;
      std::string text = s_.substr(pos_, p - pos_);
      Token::Type t =
          (std::isupper(static_cast<unsigned char>(c)) || c == '_')
              ? Token::Var
              : Token::Ident;
      pos_ = p;
      tok_ = {t, text, {start, pos_}};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     {start, start + 1});
  }

  const std::string& s_;
  size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  Formula formula() {
    Formula f = iff();
    expect(Token::End, "end of input");
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Token::End, "end of input");
    return t;
  }

  Literal literal_only() {
    bool pos = true;
    if (lex_.peek().type == Token::Tilde) {
      lex_.take();
      pos = false;
    }
    Token name = expect(Token::Ident, "predicate name");
    std::vector<Term> args = maybe_args();
    check_arity(preds_, name, args.size());
    expect(Token::End, "end of input");
    return Literal(pos, name.text, std::move(args));
  }

 private:
  Token expect(Token::Type t, const std::string& what) {
    if (lex_.peek().type != t)
      throw ParseError("expected " + what + ", got '" + lex_.peek().text + "'",
                       lex_.peek().span);
    return lex_.take();
  }

  void check_arity(std::map<std::string, size_t>& table, const Token& name,
                   size_t arity) {
    auto [it, fresh] = table.try_emplace(name.text, arity);
    if (!fresh && it->second != arity)
      throw ParseError("arity conflict for '" + name.text + "': used with " +
                           std::to_string(it->second) + " and " +
                           std::to_string(arity) + " arguments",
                       name.span);
  }

  Formula iff() {
    Formula f = imp();
    while (lex_.peek().type == Token::DArrow) {
      lex_.take();
      Formula g = imp();
      // a <-> b  ==  (~a | b) & (~b | a)
      f = Formula::conj(
          {Formula::disj({Formula::negation(f), g}),
           Formula::disj({Formula::negation(g), f})});
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (lex_.peek().type == Token::Arrow) {
      lex_.take();
      Formula g = imp();
      return Formula::disj({Formula::negation(std::move(f)), std::move(g)});
    }
    return f;
  }

  Formula disj() {
    std::vector<Formula> parts{conj()};
    while (lex_.peek().type == Token::Bar) {
      lex_.take();
      parts.push_back(conj());
    }
    return parts.size() == 1 ? parts[0] : Formula::disj(std::move(parts));
  }

  Formula conj() {
    std::vector<Formula> parts{unary()};
    while (lex_.peek().type == Token::Amp) {
      lex_.take();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
  }

  Formula unary() {
    const Token& t = lex_.peek();
    if (t.type == Token::Tilde) {
      lex_.take();
      return Formula::negation(unary());
    }
    if (t.type == Token::Ident && (t.text == "all" || t.text == "ex")) {
      Token q = lex_.take();
      Token v = expect(Token::Var, "variable");
      expect(Token::Dot, "'.'");
      Formula body = iff();  // maximal scope to the right
      return q.text == "all" ? Formula::forall(v.text, std::move(body))
                             : Formula::exists(v.text, std::move(body));
    }
    return primary();
  }

  Formula primary() {
    const Token& t = lex_.peek();
    if (t.type == Token::LPar) {
      lex_.take();
      Formula f = iff();
      expect(Token::RPar, "')'");
      return f;
    }
    if (t.type == Token::Ident) {
      if (t.text == "true") {
        lex_.take();
        return Formula::truth();
      }
      if (t.text == "false") {
        lex_.take();
        return Formula::falsity();
      }
      Token name = lex_.take();
      std::vector<Term> args = maybe_args();
      check_arity(preds_, name, args.size());
      return Formula::atom(name.text, std::move(args));
    }
    throw ParseError("expected formula, got '" + t.text + "'", t.span);
  }

  std::vector<Term> maybe_args() {
    std::vector<Term> args;
    if (lex_.peek().type != Token::LPar) return args;
    lex_.take();
    args.push_back(term());
    while (lex_.peek().type == Token::Comma) {
      lex_.take();
      args.push_back(term());
    }
    expect(Token::RPar, "')'");
    return args;
  }

  Term term() {
    const Token& t = lex_.peek();
    if (t.type == Token::Var) {
      Token v = lex_.take();
      return Term::var(v.text);
    }
    if (t.type == Token::Ident) {
      if (t.text == "true" || t.text == "false" || t.text == "all" ||
          t.text == "ex")
        throw ParseError("reserved word '" + t.text + "' used as a term",
                         t.span);
      Token name = lex_.take();
      std::vector<Term> args = maybe_args();
      check_arity(funs_, name, args.size());
      return Term::fun(name.text, std::move(args));
    }
    throw ParseError("expected term, got '" + t.text + "'", t.span);
  }

  Lexer lex_;
  std::map<std::string, size_t> preds_;
  std::map<std::string, size_t> funs_;
};

// precedence levels for printing: 0 outermost, 1 <->, 2 ->, 3 |, 4 &, 5 unary
void print_rec(const Formula& f, int parent_prec, std::ostream& os);

void print_nary(const std::vector<Formula>& parts, const char* op, int prec,
                int parent_prec, std::ostream& os) {
  bool paren = parent_prec > prec;
  if (paren) os << '(';
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ' ' << op << ' ';
    print_rec(parts[i], prec + 1, os);
  }
  if (paren) os << ')';
}

void print_rec(const Formula& f, int parent_prec, std::ostream& os) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::True:
      os << "true";
      return;
    case Kind::False:
      os << "false";
      return;
    case Kind::Atom:
      os << Literal(true, f.pred(), f.args()).str();
      return;
    case Kind::Not:
      os << '~';
      print_rec(f.child(), 5, os);
      return;
    case Kind::And:
      print_nary(f.parts(), "&", 4, parent_prec, os);
      return;
    case Kind::Or:
      print_nary(f.parts(), "|", 3, parent_prec, os);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      bool paren = parent_prec > 0;
      if (paren) os << '(';
      os << (f.is(Kind::Forall) ? "all " : "ex ") << f.var() << ". ";
      print_rec(f.child(), 0, os);
      if (paren) os << ')';
      return;
    }
    case Kind::ForallRel:
    case Kind::ExistsRel:
      print_rec(derelativize(f), parent_prec, os);
      return;
  }
}

}  // namespace

Formula parse_formula(const std::string& text) {
  return Parser(text).formula();
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_rec(f, 0, os);
  return os.str();
}

Term parse_term(const std::string& text) { return Parser(text).term_only(); }

Literal parse_literal(const std::string& text) {
  return Parser(text).literal_only();
}

std::string formula_str(const Formula& f) { return print_formula(f); }

}  // namespace tabipol
