#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quset/rational.hpp"

namespace quset {

// Language L(in, V^(Q)): first-order with equality, a membership
// relation, a primitive connective ->, and bounded quantifiers. The
// primitive core is {not, and, ->, forall-in, forall}; or/exists/iff are
// derived and desugar to it.

enum class TermKind { Variable, Constant };

struct Term {
  TermKind kind;
  std::string name;

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

inline Term var(std::string name) { return {TermKind::Variable, std::move(name)}; }
inline Term constant(std::string name) { return {TermKind::Constant, std::move(name)}; }

enum class FormulaKind {
  Membership,
  Equality,
  Not,
  And,
  Or,
  Implies,
  Iff,
  BoundedForAll,
  BoundedExists,
  ForAll,
  Exists,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  Term lhs, rhs;         // atoms
  std::string bound_var; // binders
  Term bound;            // bounded binders
  FormulaPtr left, right;  // left doubles as the body of unary/binder nodes
};

inline FormulaPtr mem(Term a, Term b) {
  return std::make_shared<Formula>(Formula{FormulaKind::Membership, std::move(a),
                                           std::move(b), {}, {}, nullptr, nullptr});
}
inline FormulaPtr eq(Term a, Term b) {
  return std::make_shared<Formula>(Formula{FormulaKind::Equality, std::move(a),
                                           std::move(b), {}, {}, nullptr, nullptr});
}
inline FormulaPtr lnot(FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::Not, {}, {}, {}, {}, std::move(f), nullptr});
}
inline FormulaPtr make_binary(FormulaKind kind, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{kind, {}, {}, {}, {}, std::move(a), std::move(b)});
}
inline FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return make_binary(FormulaKind::And, std::move(a), std::move(b));
}
inline FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  return make_binary(FormulaKind::Or, std::move(a), std::move(b));
}
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return make_binary(FormulaKind::Implies, std::move(a), std::move(b));
}
inline FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return make_binary(FormulaKind::Iff, std::move(a), std::move(b));
}
inline FormulaPtr forall_in(std::string x, Term bound, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::BoundedForAll, {}, {},
                                           std::move(x), std::move(bound),
                                           std::move(body), nullptr});
}
inline FormulaPtr exists_in(std::string x, Term bound, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::BoundedExists, {}, {},
                                           std::move(x), std::move(bound),
                                           std::move(body), nullptr});
}
inline FormulaPtr forall(std::string x, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::ForAll, {}, {}, std::move(x),
                                           {}, std::move(body), nullptr});
}
inline FormulaPtr exists(std::string x, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::Exists, {}, {}, std::move(x),
                                           {}, std::move(body), nullptr});
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Membership:
    case FormulaKind::Equality:
      return a->lhs == b->lhs && a->rhs == b->rhs;
    case FormulaKind::Not:
      return equal(a->left, b->left);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return equal(a->left, b->left) && equal(a->right, b->right);
    case FormulaKind::BoundedForAll:
    case FormulaKind::BoundedExists:
      return a->bound_var == b->bound_var && a->bound == b->bound &&
             equal(a->left, b->left);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      return a->bound_var == b->bound_var && equal(a->left, b->left);
  }
  return false;
}

/// True iff the formula has no unbounded quantifier; only such formulas
/// are evaluable (the unbounded clauses are infinite meets/joins).
inline bool is_delta0(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Membership:
    case FormulaKind::Equality:
      return true;
    case FormulaKind::Not:
      return is_delta0(f->left);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return is_delta0(f->left) && is_delta0(f->right);
    case FormulaKind::BoundedForAll:
    case FormulaKind::BoundedExists:
      return is_delta0(f->left);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      return false;
  }
  return false;
}

/// Rewrites derived symbols into the primitive core:
///   a | b      ~> !(!a & !b)
///   E x in u.f ~> !(A x in u. !f)
///   E x. f     ~> !(A x. !f)
///   a <-> b    ~> (a -> b) & (b -> a)
inline FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Membership:
    case FormulaKind::Equality:
      return f;
    case FormulaKind::Not:
      return lnot(desugar(f->left));
    case FormulaKind::And:
      return land(desugar(f->left), desugar(f->right));
    case FormulaKind::Implies:
      return implies(desugar(f->left), desugar(f->right));
    case FormulaKind::Or:
      return lnot(land(lnot(desugar(f->left)), lnot(desugar(f->right))));
    case FormulaKind::Iff:
      return land(implies(desugar(f->left), desugar(f->right)),
                  implies(desugar(f->right), desugar(f->left)));
    case FormulaKind::BoundedForAll:
      return forall_in(f->bound_var, f->bound, desugar(f->left));
    case FormulaKind::BoundedExists:
      return lnot(forall_in(f->bound_var, f->bound, lnot(desugar(f->left))));
    case FormulaKind::ForAll:
      return forall(f->bound_var, desugar(f->left));
    case FormulaKind::Exists:
      return lnot(forall(f->bound_var, lnot(desugar(f->left))));
  }
  return f;
}

/// Names of the constants occurring in the formula, in first-use order.
inline void collect_constants(const FormulaPtr& f, std::vector<std::string>& out) {
  auto add_term = [&out](const Term& t) {
    if (t.kind != TermKind::Constant) return;
    for (const auto& name : out)
      if (name == t.name) return;
    out.push_back(t.name);
  };
  switch (f->kind) {
    case FormulaKind::Membership:
    case FormulaKind::Equality:
      add_term(f->lhs);
      add_term(f->rhs);
      return;
    case FormulaKind::Not:
      collect_constants(f->left, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      collect_constants(f->left, out);
      collect_constants(f->right, out);
      return;
    case FormulaKind::BoundedForAll:
    case FormulaKind::BoundedExists:
      add_term(f->bound);
      collect_constants(f->left, out);
      return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      collect_constants(f->left, out);
      return;
  }
}

namespace detail {

// precedence: atoms 6; ! 5; & 4; | 3; -> 2 (right); <-> 1 (right);
// binders read to the end of the enclosing scope, printed at level 0.
inline int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Membership:
    case FormulaKind::Equality:
      return 6;
    case FormulaKind::Not:
      return 5;
    case FormulaKind::And:
      return 4;
    case FormulaKind::Or:
      return 3;
    case FormulaKind::Implies:
      return 2;
    case FormulaKind::Iff:
      return 1;
    default:
      return 0;
  }
}

inline void print_into(const FormulaPtr& f, int parent_level, std::string& out) {
  int level = precedence(f->kind);
  bool parens = level < parent_level ||
                (level == parent_level &&
                 (f->kind == FormulaKind::And || f->kind == FormulaKind::Or));
  if (parens) out += '(';
  switch (f->kind) {
    case FormulaKind::Membership:
      out += f->lhs.name + " in " + f->rhs.name;
      break;
    case FormulaKind::Equality:
      out += f->lhs.name + " = " + f->rhs.name;
      break;
    case FormulaKind::Not:
      out += '!';
      print_into(f->left, level + 1, out);
      break;
    case FormulaKind::And:
      print_into(f->left, level, out);
      out += " & ";
      print_into(f->right, level, out);
      break;
    case FormulaKind::Or:
      print_into(f->left, level, out);
      out += " | ";
      print_into(f->right, level, out);
      break;
    case FormulaKind::Implies:
      print_into(f->left, level + 1, out);
      out += " -> ";
      print_into(f->right, level, out);
      break;
    case FormulaKind::Iff:
      print_into(f->left, level + 1, out);
      out += " <-> ";
      print_into(f->right, level, out);
      break;
    case FormulaKind::BoundedForAll:
    case FormulaKind::BoundedExists:
      out += f->kind == FormulaKind::BoundedForAll ? "A " : "E ";
      out += f->bound_var + " in " + f->bound.name + " . ";
      print_into(f->left, 0, out);
      break;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      out += f->kind == FormulaKind::ForAll ? "A " : "E ";
      out += f->bound_var + " . ";
      print_into(f->left, 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::string out;
  detail::print_into(f, 0, out);
  return out;
}

namespace detail {

struct Token {
  enum Kind { Ident, LParen, RParen, Dot, Bang, Amp, Pipe, Arrow, DArrow, Eq, In, All, Ex, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::End, "", start};
      return;
    }
    char c = text_[pos_];
    auto one = [&](Token::Kind k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    switch (c) {
      case '(': one(Token::LParen); return;
      case ')': one(Token::RParen); return;
      case '.': one(Token::Dot); return;
      case '!': one(Token::Bang); return;
      case '&': one(Token::Amp); return;
      case '|': one(Token::Pipe); return;
      case '=': one(Token::Eq); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          current_ = {Token::Arrow, "->", start};
          return;
        }
        throw ParseError("stray '-' at position " + std::to_string(start));
      case '<':
        if (pos_ + 2 < text_.size() + 1 && text_.compare(pos_, 3, "<->") == 0) {
          pos_ += 3;
          current_ = {Token::DArrow, "<->", start};
          return;
        }
        throw ParseError("stray '<' at position " + std::to_string(start));
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_' ||
              text_[end] == ':'))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "in")
        current_ = {Token::In, word, start};
      else if (word == "A")
        current_ = {Token::All, word, start};
      else if (word == "E")
        current_ = {Token::Ex, word, start};
      else
        current_ = {Token::Ident, word, start};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                     std::to_string(start));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_{Token::End, "", 0};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_iff();
    const Token& t = lexer_.peek();
    if (t.kind != Token::End)
      throw ParseError("unexpected '" + t.text + "' at position " + std::to_string(t.pos));
    return f;
  }

 private:
  // iff := impl ('<->' iff)?   (right-assoc, lowest precedence)
  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_impl();
    if (lexer_.peek().kind == Token::DArrow) {
      lexer_.next();
      return iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  FormulaPtr parse_impl() {
    FormulaPtr lhs = parse_or();
    if (lexer_.peek().kind == Token::Arrow) {
      lexer_.next();
      return implies(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (lexer_.peek().kind == Token::Pipe) {
      lexer_.next();
      f = lor(std::move(f), parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (lexer_.peek().kind == Token::Amp) {
      lexer_.next();
      f = land(std::move(f), parse_unary());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    const Token& t = lexer_.peek();
    if (t.kind == Token::Bang) {
      lexer_.next();
      return lnot(parse_unary());
    }
    if (t.kind == Token::All || t.kind == Token::Ex) return parse_quantifier();
    return parse_atom();
  }

  // 'A x in t . f' | 'A x . f' | same with 'E'; the body extends to the
  // end of the enclosing scope.
  FormulaPtr parse_quantifier() {
    Token q = lexer_.next();
    Token name = lexer_.next();
    if (name.kind != Token::Ident)
      throw ParseError("expected variable after quantifier at position " +
                       std::to_string(name.pos));
    bool bounded = false;
    Term bound;
    if (lexer_.peek().kind == Token::In) {
      lexer_.next();
      bounded = true;
      bound = parse_term();
    }
    Token dot = lexer_.next();
    if (dot.kind != Token::Dot)
      throw ParseError("expected '.' after quantifier binder at position " +
                       std::to_string(dot.pos));
    scope_.push_back(name.text);
    FormulaPtr body = parse_iff();
    scope_.pop_back();
    if (q.kind == Token::All)
      return bounded ? forall_in(name.text, bound, std::move(body))
                     : forall(name.text, std::move(body));
    return bounded ? exists_in(name.text, bound, std::move(body))
                   : exists(name.text, std::move(body));
  }

  FormulaPtr parse_atom() {
    const Token& t = lexer_.peek();
    if (t.kind == Token::LParen) {
      lexer_.next();
      FormulaPtr f = parse_iff();
      Token close = lexer_.next();
      if (close.kind != Token::RParen)
        throw ParseError("expected ')' at position " + std::to_string(close.pos));
      return f;
    }
    Term lhs = parse_term();
    Token rel = lexer_.next();
    if (rel.kind == Token::In) return mem(std::move(lhs), parse_term());
    if (rel.kind == Token::Eq) return eq(std::move(lhs), parse_term());
    throw ParseError("expected 'in' or '=' at position " + std::to_string(rel.pos));
  }

  // an identifier is a variable iff some enclosing binder introduced it
  Term parse_term() {
    Token t = lexer_.next();
    if (t.kind != Token::Ident)
      throw ParseError("expected a name at position " + std::to_string(t.pos));
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == t.text) return var(t.text);
    return constant(t.text);
  }

  Lexer lexer_;
  std::vector<std::string> scope_;
};

}  // namespace detail

/// Parses the ASCII surface syntax. Precedence ! > & > | > -> > <->,
/// with -> and <-> right-associative; 'A'/'E'/'in' are reserved words.
inline FormulaPtr parse(const std::string& text) { return detail::Parser(text).parse(); }

}  // namespace quset
