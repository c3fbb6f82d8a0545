#pragma once

// Textual syntax for lambda terms.
//
//   term  ::= ('\' | 'lam') ident+ '.' term | sum
//   sum   ::= app (('+' | '-.') app)*          left-associative
//   app   ::= atom+ [lambda]                   left-associative
//   atom  ::= ident | eps | 0 | 1 | pair | left | right | isZero | ite | R
//           | '+' | '(' '+' ')' | '(' '-.' ')' | '(' term ')' | '(' term ',' term ')'

#include <array>
#include <ostream>
#include <string>
#include <string_view>

#include "realizer/syntax.hpp"
#include "realizer/term.hpp"

namespace realizer::lambda {

namespace detail {

struct Keyword {
  std::string_view word;
  ConstKind kind;
};

inline constexpr std::array<Keyword, 6> kConstKeywords{{
    {"pair", ConstKind::Pair},
    {"left", ConstKind::Left},
    {"right", ConstKind::Right},
    {"isZero", ConstKind::IsZero},
    {"ite", ConstKind::IfThenElse},
    {"R", ConstKind::R},
}};

inline bool is_reserved(std::string_view w) {
  if (w == "lam" || w == "eps") return true;
  for (const auto& k : kConstKeywords) {
    if (k.word == w) return true;
  }
  return false;
}

class TermParser {
 public:
  explicit TermParser(syntax::TokenStream& ts) : ts_(ts) {}

  Term term() {
    if (at_lambda()) return lambda();
    return sum();
  }

 private:
  syntax::TokenStream& ts_;

  bool at_lambda() const { return ts_.at(syntax::Tok::Backslash) || ts_.at_ident("lam"); }

  std::string binder() {
    auto tok = ts_.expect(syntax::Tok::Ident, "binder name");
    if (is_reserved(tok.text)) throw ParseError(tok.pos, "'" + tok.text + "' cannot be bound");
    return tok.text;
  }

  Term lambda() {
    ts_.next();
    std::vector<std::string> names{binder()};
    while (ts_.at(syntax::Tok::Ident)) names.push_back(binder());
    ts_.expect(syntax::Tok::Dot, "'.' after binder");
    Term body = term();
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = lam(*it, std::move(body));
    return body;
  }

  Term sum() {
    Term acc = application();
    for (;;) {
      if (ts_.accept(syntax::Tok::Plus)) {
        acc = plus(std::move(acc), application());
      } else if (ts_.accept(syntax::Tok::CutMinus)) {
        acc = cut_minus(std::move(acc), application());
      } else {
        return acc;
      }
    }
  }

  bool at_atom() const {
    using syntax::Tok;
    return ts_.at(Tok::Ident) || ts_.at(Tok::Zero) || ts_.at(Tok::One) || ts_.at(Tok::LParen);
  }

  Term application() {
    Term acc = first_atom();
    for (;;) {
      if (at_lambda()) return app(std::move(acc), lambda());
      if (!at_atom() || ts_.at_ident("lam")) return acc;
      acc = app(std::move(acc), atom());
    }
  }

  Term first_atom() {
    if (at_lambda()) return lambda();
    // A leading '+' is the bare constant, as in "+ + +".
    if (ts_.accept(syntax::Tok::Plus)) return cnst(ConstKind::Plus);
    if (!at_atom()) ts_.fail("expected a term");
    return atom();
  }

  Term atom() {
    using syntax::Tok;
    auto tok = ts_.next();
    switch (tok.kind) {
      case Tok::Zero:
        return zero();
      case Tok::One:
        return one();
      case Tok::Ident: {
        if (tok.text == "eps") return eps();
        for (const auto& k : kConstKeywords) {
          if (k.word == tok.text) return cnst(k.kind);
        }
        return var(tok.text);
      }
      case Tok::LParen: {
        if (ts_.at(Tok::Plus) && ts_.peek(1).kind == Tok::RParen) {
          ts_.next();
          ts_.next();
          return cnst(ConstKind::Plus);
        }
        if (ts_.at(Tok::CutMinus) && ts_.peek(1).kind == Tok::RParen) {
          ts_.next();
          ts_.next();
          return cnst(ConstKind::CutMinus);
        }
        Term inner = term();
        if (ts_.accept(Tok::Comma)) {
          Term second = term();
          ts_.expect(Tok::RParen, "')' closing pair");
          return pair(std::move(inner), std::move(second));
        }
        ts_.expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError(tok.pos, "expected a term, found '" + tok.text + "'");
    }
  }
};

// Precedence levels: 0 lambda, 1 infix, 2 application, 3 atom.
inline void print_term(const Term& t, int prec, std::string& out);

inline std::string_view const_word(ConstKind k) {
  switch (k) {
    case ConstKind::Zero: return "0";
    case ConstKind::One: return "1";
    case ConstKind::Plus: return "(+)";
    case ConstKind::CutMinus: return "(-.)";
    case ConstKind::Pair: return "pair";
    case ConstKind::Left: return "left";
    case ConstKind::Right: return "right";
    case ConstKind::IsZero: return "isZero";
    case ConstKind::IfThenElse: return "ite";
    case ConstKind::R: return "R";
  }
  return "?";
}

inline void print_term(const Term& t, int prec, std::string& out) {
  if (const auto* v = t.get_if<Var>()) {
    out += v->name == kEpsilon ? std::string("eps") : v->name;
    return;
  }
  if (const auto* c = t.get_if<Const>()) {
    out += const_word(c->kind);
    return;
  }
  if (const auto* l = t.get_if<Lam>()) {
    if (prec > 0) out += '(';
    out += '\\';
    out += l->binder;
    out += ". ";
    print_term(l->body, 0, out);
    if (prec > 0) out += ')';
    return;
  }
  const auto& a = *t.get_if<App>();
  if (const auto* inner = a.fun.get_if<App>()) {
    if (inner->fun.is_const(ConstKind::Pair)) {
      out += '(';
      print_term(inner->arg, 0, out);
      out += ", ";
      print_term(a.arg, 0, out);
      out += ')';
      return;
    }
    if (inner->fun.is_const(ConstKind::Plus) || inner->fun.is_const(ConstKind::CutMinus)) {
      if (prec > 1) out += '(';
      print_term(inner->arg, 1, out);
      out += inner->fun.is_const(ConstKind::Plus) ? " + " : " -. ";
      print_term(a.arg, 2, out);
      if (prec > 1) out += ')';
      return;
    }
  }
  if (prec > 2) out += '(';
  print_term(a.fun, 2, out);
  out += ' ';
  print_term(a.arg, 3, out);
  if (prec > 2) out += ')';
}

}  // namespace detail

/// Parses a complete term. `origin` locates text[0] for error messages.
inline Term parse_term(std::string_view text, SourcePos origin = {}) {
  syntax::TokenStream ts(syntax::tokenize(text, origin));
  detail::TermParser p(ts);
  Term t = p.term();
  if (!ts.at(syntax::Tok::End)) ts.fail("unexpected trailing input");
  return t;
}

inline std::string to_string(const Term& t) {
  std::string out;
  detail::print_term(t, 0, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

}  // namespace realizer::lambda
