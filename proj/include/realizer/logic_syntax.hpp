#pragma once

// Textual syntax for arithmetic terms and formulas.
//
//   formula ::= quant | imp
//   quant   ::= ('forall' | 'exists') ident (',' ident)* '.' formula
//   imp     ::= or ['->' imp]
//   or      ::= and ['\/' or]
//   and     ::= unary ['/\' and]
//   unary   ::= quant | '(' formula ')' | arith ('=' | '>=') arith
//   arith   ::= prim ('+' prim)*
//   prim    ::= 0 | 1 | ident | '(' arith ')'

#include <ostream>
#include <string>
#include <string_view>

#include "realizer/logic.hpp"
#include "realizer/syntax.hpp"

namespace realizer::logic {

namespace detail {

inline bool is_keyword(std::string_view w) { return w == "forall" || w == "exists"; }

class FormulaParser {
 public:
  explicit FormulaParser(syntax::TokenStream& ts) : ts_(ts) {}

  Formula formula() {
    if (at_quant()) return quant();
    return implication();
  }

  ArithTerm arith() {
    ArithTerm acc = prim();
    while (ts_.accept(syntax::Tok::Plus)) acc = aplus(std::move(acc), prim());
    return acc;
  }

 private:
  syntax::TokenStream& ts_;

  bool at_quant() const { return ts_.at_ident("forall") || ts_.at_ident("exists"); }

  Formula quant() {
    bool universal = ts_.next().text == "forall";
    std::vector<std::string> names;
    do {
      auto tok = ts_.expect(syntax::Tok::Ident, "bound variable");
      if (is_keyword(tok.text)) throw ParseError(tok.pos, "'" + tok.text + "' cannot be bound");
      names.push_back(tok.text);
    } while (ts_.accept(syntax::Tok::Comma));
    ts_.expect(syntax::Tok::Dot, "'.' after quantified variables");
    Formula body = formula();
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      body = universal ? forall(*it, std::move(body)) : exists(*it, std::move(body));
    }
    return body;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (ts_.accept(syntax::Tok::Arrow)) return imp(std::move(lhs), implication_rhs());
    return lhs;
  }

  Formula implication_rhs() { return at_quant() ? quant() : implication(); }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (ts_.accept(syntax::Tok::Or)) return disj(std::move(lhs), at_quant() ? quant() : disjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (ts_.accept(syntax::Tok::And)) return conj(std::move(lhs), at_quant() ? quant() : conjunction());
    return lhs;
  }

  Formula unary() {
    if (at_quant()) return quant();
    if (ts_.at(syntax::Tok::LParen)) {
      // Either a parenthesized formula or an atom starting with "(t + s)".
      auto m = ts_.mark();
      try {
        return atom();
      } catch (const ParseError&) {
        ts_.reset(m);
      }
      ts_.next();
      Formula inner = formula();
      ts_.expect(syntax::Tok::RParen, "')'");
      return inner;
    }
    return atom();
  }

  Formula atom() {
    ArithTerm lhs = arith();
    if (ts_.accept(syntax::Tok::Eq)) return eq(std::move(lhs), arith());
    if (ts_.accept(syntax::Tok::Geq)) return geq(std::move(lhs), arith());
    ts_.fail("expected '=' or '>='");
  }

  ArithTerm prim() {
    using syntax::Tok;
    auto tok = ts_.next();
    switch (tok.kind) {
      case Tok::Zero:
        return azero();
      case Tok::One:
        return aone();
      case Tok::Ident:
        if (is_keyword(tok.text)) throw ParseError(tok.pos, "unexpected '" + tok.text + "'");
        return avar(tok.text);
      case Tok::LParen: {
        ArithTerm inner = arith();
        ts_.expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError(tok.pos, tok.kind == Tok::End ? "expected a term at end of input"
                                                       : "expected a term, found '" + tok.text + "'");
    }
  }
};

inline void print_arith(const ArithTerm& t, int prec, std::string& out) {
  if (const auto* v = t.get_if<ArithTerm::Var>()) {
    out += v->name;
  } else if (t.get_if<ArithTerm::Zero>()) {
    out += '0';
  } else if (t.get_if<ArithTerm::One>()) {
    out += '1';
  } else {
    const auto& p = *t.get_if<ArithTerm::Plus>();
    if (prec > 0) out += '(';
    print_arith(p.lhs, 0, out);
    out += " + ";
    print_arith(p.rhs, 1, out);
    if (prec > 0) out += ')';
  }
}

// Precedence levels: 0 quantifier, 1 implication, 2 disjunction,
// 3 conjunction, 4 atom.
inline void print_formula(const Formula& f, int prec, std::string& out) {
  if (const auto* a = f.get_if<Formula::Atom>()) {
    print_arith(a->lhs, 0, out);
    out += a->rel == Formula::Relation::Eq ? " = " : " >= ";
    print_arith(a->rhs, 0, out);
    return;
  }
  if (const auto* q = f.get_if<Formula::Quant>()) {
    if (prec > 0) out += '(';
    out += q->q == Formula::Quantifier::Forall ? "forall " : "exists ";
    out += q->binder;
    out += ". ";
    print_formula(q->body, 0, out);
    if (prec > 0) out += ')';
    return;
  }
  const auto& b = *f.get_if<Formula::Binary>();
  int level = 0;
  std::string_view op;
  switch (b.op) {
    case Formula::Connective::Imp: level = 1; op = " -> "; break;
    case Formula::Connective::Or: level = 2; op = " \\/ "; break;
    case Formula::Connective::And: level = 3; op = " /\\ "; break;
  }
  if (prec > level) out += '(';
  print_formula(b.lhs, level + 1, out);
  out += op;
  print_formula(b.rhs, level, out);
  if (prec > level) out += ')';
}

}  // namespace detail

inline Formula parse_formula(std::string_view text, SourcePos origin = {}) {
  syntax::TokenStream ts(syntax::tokenize(text, origin));
  detail::FormulaParser p(ts);
  Formula f = p.formula();
  if (!ts.at(syntax::Tok::End)) ts.fail("unexpected trailing input");
  return f;
}

inline ArithTerm parse_arith(std::string_view text, SourcePos origin = {}) {
  syntax::TokenStream ts(syntax::tokenize(text, origin));
  detail::FormulaParser p(ts);
  ArithTerm t = p.arith();
  if (!ts.at(syntax::Tok::End)) ts.fail("unexpected trailing input");
  return t;
}

inline std::string to_string(const ArithTerm& t) {
  std::string out;
  detail::print_arith(t, 0, out);
  return out;
}

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_formula(f, 0, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const ArithTerm& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace realizer::logic
