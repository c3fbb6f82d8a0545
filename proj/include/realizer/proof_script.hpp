#pragma once

// S-expression proof scripts.
//
//   (refl t) (geq-refl t) (geq-zero t) (zero-or-succ t) (geq-succ-mono t s)
//   (assume label F) (and-i p q) (or-i-l F p) (or-i-r F p)
//   (or-e p (label q) (label r)) (imp-e p q)
//   (forall-i x p) (forall-e p t) (exists-i (x F) t p) (exists-e p (y label q))
//   (ind (x F) base (n label step)) (eq-rule (h F) t s p q)
//
// Terms and formulas are atoms or double-quoted strings in the formula
// syntax. The variable of forall-i and the term of forall-e may be a
// comma-separated list, which stands for nested nodes.

#include <map>
#include <string>
#include <string_view>

#include "realizer/logic_syntax.hpp"
#include "realizer/proof.hpp"
#include "realizer/sexpr.hpp"

namespace realizer::kernel {

struct ParsedProof {
  Proof proof;
  /// Source position of every node, keyed by the node path used in CheckError.
  std::map<std::string, SourcePos> positions;

  /// Position of the node at `path`, or of its nearest recorded ancestor.
  SourcePos position_of(std::string path) const {
    for (;;) {
      if (auto it = positions.find(path); it != positions.end()) return it->second;
      if (path.empty()) return {};
      auto dot = path.rfind('.');
      path = dot == std::string::npos ? std::string() : path.substr(0, dot);
    }
  }
};

namespace detail {

using sexpr::Sexpr;

class ScriptParser {
 public:
  std::map<std::string, SourcePos> positions;

  Proof proof(const Sexpr& e, const std::string& path) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_text() ||
        e.items[0].kind != Sexpr::Kind::Atom) {
      throw ParseError(e.pos, "expected a proof form '(rule ...)'");
    }
    positions[path] = e.pos;
    const std::string& head = e.items[0].text;
    const auto& it = e.items;
    auto child = [&](std::string_view name) { return child_path(path, name); };

    if (auto kind = axiom_kind(head)) {
      std::vector<ArithTerm> args;
      for (std::size_t k = 1; k < it.size(); ++k) args.push_back(arith(it[k]));
      if (args.empty()) throw ParseError(e.pos, "'" + head + "' needs a term");
      return Axiom{*kind, std::move(args)};
    }
    if (head == "assume") {
      arity(e, 2);
      return Assume{label(it[1]), formula(it[2])};
    }
    if (head == "and-i") {
      arity(e, 2);
      Proof l = proof(it[1], child("left"));
      return AndI{std::move(l), proof(it[2], child("right"))};
    }
    if (head == "or-i-l" || head == "or-i-r") {
      arity(e, 2);
      Formula other = formula(it[1]);
      Proof p = proof(it[2], child("premise"));
      if (head == "or-i-l") return OrIL{std::move(other), std::move(p)};
      return OrIR{std::move(other), std::move(p)};
    }
    if (head == "or-e") {
      arity(e, 3);
      Proof d = proof(it[1], child("disj"));
      const auto& c1 = list(it[2], 2, "(label proof)");
      const auto& c2 = list(it[3], 2, "(label proof)");
      std::string l1 = label(c1.items[0]);
      Proof p1 = proof(c1.items[1], child("case1"));
      std::string l2 = label(c2.items[0]);
      Proof p2 = proof(c2.items[1], child("case2"));
      return OrE{std::move(d), std::move(l1), std::move(p1), std::move(l2), std::move(p2)};
    }
    if (head == "imp-e") {
      arity(e, 2);
      Proof a = proof(it[1], child("ant"));
      return ImpE{std::move(a), proof(it[2], child("imp"))};
    }
    if (head == "forall-i") {
      arity(e, 2);
      auto names = split(it[1]);
      std::string inner = path;
      for (std::size_t k = 1; k < names.size(); ++k) {
        inner = child_path(inner, "premise");
        positions[inner] = e.pos;
      }
      Proof p = proof(it[2], child_path(inner, "premise"));
      for (auto n = names.rbegin(); n != names.rend(); ++n) {
        p = ForallI{variable(it[1], *n), std::move(p)};
      }
      return p;
    }
    if (head == "forall-e") {
      arity(e, 2);
      auto terms = split(it[2]);
      std::string inner = path;
      for (std::size_t k = 1; k < terms.size(); ++k) {
        inner = child_path(inner, "premise");
        positions[inner] = e.pos;
      }
      Proof p = proof(it[1], child_path(inner, "premise"));
      for (const auto& t : terms) {
        p = ForallE{std::move(p), logic::parse_arith(t, it[2].text_pos)};
      }
      return p;
    }
    if (head == "exists-i") {
      arity(e, 3);
      const auto& b = list(it[1], 2, "(variable formula)");
      std::string x = variable(b.items[0], b.items[0].text);
      Formula body = formula(b.items[1]);
      ArithTerm w = arith(it[2]);
      return ExistsI{std::move(x), std::move(body), std::move(w), proof(it[3], child("premise"))};
    }
    if (head == "exists-e") {
      arity(e, 2);
      Proof ex = proof(it[1], child("ex"));
      const auto& b = list(it[2], 3, "(variable label proof)");
      std::string y = variable(b.items[0], b.items[0].text);
      std::string l = label(b.items[1]);
      return ExistsE{std::move(ex), std::move(y), std::move(l), proof(b.items[2], child("body"))};
    }
    if (head == "ind") {
      arity(e, 3);
      const auto& m = list(it[1], 2, "(variable formula)");
      std::string x = variable(m.items[0], m.items[0].text);
      Formula motive = formula(m.items[1]);
      Proof base = proof(it[2], child("base"));
      const auto& s = list(it[3], 3, "(variable label proof)");
      std::string n = variable(s.items[0], s.items[0].text);
      std::string l = label(s.items[1]);
      Proof step = proof(s.items[2], child("step"));
      return Ind{std::move(x), std::move(motive), std::move(base), std::move(l), std::move(n),
                 std::move(step)};
    }
    if (head == "eq-rule") {
      arity(e, 5);
      const auto& m = list(it[1], 2, "(variable formula)");
      std::string h = variable(m.items[0], m.items[0].text);
      Formula motive = formula(m.items[1]);
      ArithTerm t = arith(it[2]);
      ArithTerm s = arith(it[3]);
      Proof eq = proof(it[4], child("eq"));
      return EqRule{std::move(h), std::move(motive), std::move(t), std::move(s), std::move(eq),
                    proof(it[5], child("premise"))};
    }
    throw ParseError(e.items[0].pos, "unknown rule '" + head + "'");
  }

 private:
  static std::optional<AxiomKind> axiom_kind(std::string_view head) {
    if (head == "refl") return AxiomKind::Refl;
    if (head == "geq-refl") return AxiomKind::GeqRefl;
    if (head == "geq-zero") return AxiomKind::GeqZero;
    if (head == "zero-or-succ") return AxiomKind::ZeroOrSucc;
    if (head == "geq-succ-mono") return AxiomKind::GeqSuccMono;
    return std::nullopt;
  }

  static void arity(const Sexpr& e, std::size_t n) {
    if (e.items.size() != n + 1) {
      throw ParseError(e.pos, "'" + e.items[0].text + "' takes " + std::to_string(n) +
                                  " argument(s), got " + std::to_string(e.items.size() - 1));
    }
  }

  static const Sexpr& list(const Sexpr& e, std::size_t n, std::string_view shape) {
    if (!e.is_list() || e.items.size() != n) {
      throw ParseError(e.pos, "expected " + std::string(shape));
    }
    return e;
  }

  static const std::string& text(const Sexpr& e, std::string_view what) {
    if (!e.is_text()) throw ParseError(e.pos, "expected " + std::string(what));
    return e.text;
  }

  static std::string label(const Sexpr& e) {
    const auto& t = text(e, "a label");
    if (t.empty()) throw ParseError(e.pos, "empty label");
    return t;
  }

  static std::string variable(const Sexpr& e, const std::string& name) {
    auto toks = syntax::tokenize(name, e.text_pos);
    if (toks.size() != 2 || toks[0].kind != syntax::Tok::Ident || logic::detail::is_keyword(name)) {
      throw ParseError(e.text_pos, "expected a variable name, found '" + name + "'");
    }
    return name;
  }

  static std::vector<std::string> split(const Sexpr& e) {
    const auto& t = text(e, "a variable or term list");
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
      auto comma = t.find(',', start);
      std::string part = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      auto b = part.find_first_not_of(" \t\n");
      auto f = part.find_last_not_of(" \t\n");
      out.push_back(b == std::string::npos ? std::string() : part.substr(b, f - b + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  static Formula formula(const Sexpr& e) { return logic::parse_formula(text(e, "a formula"), e.text_pos); }
  static ArithTerm arith(const Sexpr& e) { return logic::parse_arith(text(e, "a term"), e.text_pos); }
};

inline std::string_view axiom_name(AxiomKind k) {
  switch (k) {
    case AxiomKind::Refl: return "refl";
    case AxiomKind::GeqRefl: return "geq-refl";
    case AxiomKind::GeqZero: return "geq-zero";
    case AxiomKind::ZeroOrSucc: return "zero-or-succ";
    case AxiomKind::GeqSuccMono: return "geq-succ-mono";
  }
  return "?";
}

struct ScriptPrinter {
  std::string& out;
  int indent;

  void nl(int extra) const {
    out += '\n';
    out.append(static_cast<std::size_t>(indent + extra), ' ');
  }
  void sub(const Proof& p, int extra) const {
    nl(extra);
    p.visit(ScriptPrinter{out, indent + extra});
  }
  void f(const Formula& x) const { out += sexpr::quote(logic::to_string(x)); }
  void t(const ArithTerm& x) const { out += sexpr::quote(logic::to_string(x)); }

  void operator()(const Axiom& a) const {
    out += '(';
    out += axiom_name(a.schema);
    for (const auto& x : a.args) {
      out += ' ';
      t(x);
    }
    out += ')';
  }
  void operator()(const Assume& a) const {
    out += "(assume " + sexpr::quote(a.label) + ' ';
    f(a.formula);
    out += ')';
  }
  void operator()(const AndI& n) const {
    out += "(and-i";
    sub(n.left, 2);
    sub(n.right, 2);
    out += ')';
  }
  void operator()(const OrIL& n) const {
    out += "(or-i-l ";
    f(n.other);
    sub(n.premise, 2);
    out += ')';
  }
  void operator()(const OrIR& n) const {
    out += "(or-i-r ";
    f(n.other);
    sub(n.premise, 2);
    out += ')';
  }
  void operator()(const OrE& n) const {
    out += "(or-e";
    sub(n.disj, 2);
    nl(2);
    out += '(' + sexpr::quote(n.left_label);
    sub(n.left_case, 4);
    out += ')';
    nl(2);
    out += '(' + sexpr::quote(n.right_label);
    sub(n.right_case, 4);
    out += "))";
  }
  void operator()(const ImpE& n) const {
    out += "(imp-e";
    sub(n.ant, 2);
    sub(n.imp, 2);
    out += ')';
  }
  void operator()(const ForallI& n) const {
    out += "(forall-i " + sexpr::quote(n.eigen);
    sub(n.premise, 2);
    out += ')';
  }
  void operator()(const ForallE& n) const {
    out += "(forall-e";
    sub(n.premise, 2);
    nl(2);
    t(n.witness);
    out += ')';
  }
  void operator()(const ExistsI& n) const {
    out += "(exists-i (" + sexpr::quote(n.binder) + ' ';
    f(n.body);
    out += ") ";
    t(n.witness);
    sub(n.premise, 2);
    out += ')';
  }
  void operator()(const ExistsE& n) const {
    out += "(exists-e";
    sub(n.ex, 2);
    nl(2);
    out += '(' + sexpr::quote(n.eigen) + ' ' + sexpr::quote(n.label);
    sub(n.body, 4);
    out += "))";
  }
  void operator()(const Ind& n) const {
    out += "(ind (" + sexpr::quote(n.counter) + ' ';
    f(n.motive);
    out += ')';
    sub(n.base, 2);
    nl(2);
    out += '(' + sexpr::quote(n.step_eigen) + ' ' + sexpr::quote(n.hyp_label);
    sub(n.step, 4);
    out += "))";
  }
  void operator()(const EqRule& n) const {
    out += "(eq-rule (" + sexpr::quote(n.hole) + ' ';
    f(n.motive);
    out += ") ";
    t(n.lhs);
    out += ' ';
    t(n.rhs);
    sub(n.eq, 2);
    sub(n.premise, 2);
    out += ')';
  }
};

}  // namespace detail

inline ParsedProof parse_proof_script(std::string_view text) {
  auto e = sexpr::read_one(text);
  detail::ScriptParser p;
  Proof proof = p.proof(e, "");
  return {std::move(proof), std::move(p.positions)};
}

inline std::string print_proof_script(const Proof& p) {
  std::string out;
  p.visit(detail::ScriptPrinter{out, 0});
  out += '\n';
  return out;
}

}  // namespace realizer::kernel
