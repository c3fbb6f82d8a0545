#pragma once

// Natural-deduction proofs for intuitionistic arithmetic and their checker.
//
// Supported rules: and-introduction, both or-introductions, or-elimination,
// implication-elimination, forall introduction/elimination, exists
// introduction/elimination, induction and the equality rule. Leaves are
// labeled assumptions or instances of the five axiom schemas.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "realizer/logic.hpp"
#include "realizer/logic_syntax.hpp"

namespace realizer::kernel {

using logic::ArithTerm;
using logic::Formula;

enum class AxiomKind {
  Refl,         // t = t
  GeqRefl,      // t >= t
  ZeroOrSucc,   // t = 0 \/ exists y. t = y + 1
  GeqSuccMono,  // t >= s -> t + 1 >= s + 1
  GeqZero,      // t >= 0
};

inline std::size_t axiom_arity(AxiomKind k) { return k == AxiomKind::GeqSuccMono ? 2 : 1; }

class Proof;

struct Axiom {
  AxiomKind schema;
  std::vector<ArithTerm> args;
  bool operator==(const Axiom&) const = default;
};

struct Assume {
  std::string label;
  Formula formula;
  bool operator==(const Assume&) const = default;
};

struct AndI;
struct OrIL;
struct OrIR;
struct OrE;
struct ImpE;
struct ForallI;
struct ForallE;
struct ExistsI;
struct ExistsE;
struct Ind;
struct EqRule;

namespace detail {
struct ProofNode;
}

class Proof {
 public:
  Proof(Axiom n);
  Proof(Assume n);
  Proof(AndI n);
  Proof(OrIL n);
  Proof(OrIR n);
  Proof(OrE n);
  Proof(ImpE n);
  Proof(ForallI n);
  Proof(ForallE n);
  Proof(ExistsI n);
  Proof(ExistsE n);
  Proof(Ind n);
  Proof(EqRule n);

  template <class T>
  const T* get_if() const;

  template <class F>
  decltype(auto) visit(F&& f) const;

  friend bool operator==(const Proof& a, const Proof& b);

 private:
  std::shared_ptr<const detail::ProofNode> node_;
};

struct AndI {
  Proof left;
  Proof right;
  bool operator==(const AndI&) const = default;
};

/// Concludes premise \/ other.
struct OrIL {
  Formula other;
  Proof premise;
  bool operator==(const OrIL&) const = default;
};

/// Concludes other \/ premise.
struct OrIR {
  Formula other;
  Proof premise;
  bool operator==(const OrIR&) const = default;
};

struct OrE {
  Proof disj;
  std::string left_label;
  Proof left_case;
  std::string right_label;
  Proof right_case;
  bool operator==(const OrE&) const = default;
};

/// From A (ant) and A -> B (imp) conclude B.
struct ImpE {
  Proof ant;
  Proof imp;
  bool operator==(const ImpE&) const = default;
};

struct ForallI {
  std::string eigen;
  Proof premise;
  bool operator==(const ForallI&) const = default;
};

struct ForallE {
  Proof premise;
  ArithTerm witness;
  bool operator==(const ForallE&) const = default;
};

/// From body[binder := witness] conclude exists binder. body.
struct ExistsI {
  std::string binder;
  Formula body;
  ArithTerm witness;
  Proof premise;
  bool operator==(const ExistsI&) const = default;
};

/// From exists x. B and a proof of A under [B[x := eigen]] (label) conclude A.
struct ExistsE {
  Proof ex;
  std::string eigen;
  std::string label;
  Proof body;
  bool operator==(const ExistsE&) const = default;
};

/// From A(0) and A(eigen + 1) under [A(eigen)] (hyp_label) conclude
/// forall counter. A(counter), where A is `motive`.
struct Ind {
  std::string counter;
  Formula motive;
  Proof base;
  std::string hyp_label;
  std::string step_eigen;
  Proof step;
  bool operator==(const Ind&) const = default;
};

/// From lhs = rhs (eq) and motive[hole := rhs] (premise) conclude
/// motive[hole := lhs].
struct EqRule {
  std::string hole;
  Formula motive;
  ArithTerm lhs;
  ArithTerm rhs;
  Proof eq;
  Proof premise;
  bool operator==(const EqRule&) const = default;
};

namespace detail {
struct ProofNode {
  std::variant<Axiom, Assume, AndI, OrIL, OrIR, OrE, ImpE, ForallI, ForallE, ExistsI, ExistsE, Ind,
               EqRule>
      data;
};
}  // namespace detail

#define REALIZER_PROOF_CTOR(T) \
  inline Proof::Proof(T n) : node_(std::make_shared<detail::ProofNode>(detail::ProofNode{std::move(n)})) {}
REALIZER_PROOF_CTOR(Axiom)
REALIZER_PROOF_CTOR(Assume)
REALIZER_PROOF_CTOR(AndI)
REALIZER_PROOF_CTOR(OrIL)
REALIZER_PROOF_CTOR(OrIR)
REALIZER_PROOF_CTOR(OrE)
REALIZER_PROOF_CTOR(ImpE)
REALIZER_PROOF_CTOR(ForallI)
REALIZER_PROOF_CTOR(ForallE)
REALIZER_PROOF_CTOR(ExistsI)
REALIZER_PROOF_CTOR(ExistsE)
REALIZER_PROOF_CTOR(Ind)
REALIZER_PROOF_CTOR(EqRule)
#undef REALIZER_PROOF_CTOR

template <class T>
const T* Proof::get_if() const {
  return std::get_if<T>(&node_->data);
}

template <class F>
decltype(auto) Proof::visit(F&& f) const {
  return std::visit(std::forward<F>(f), node_->data);
}

inline bool operator==(const Proof& a, const Proof& b) {
  return a.node_ == b.node_ || a.node_->data == b.node_->data;
}

// ---------------------------------------------------------------------------
// Navigation by child name

namespace detail {

inline Proof* child_slot(Axiom&, std::string_view) { return nullptr; }
inline Proof* child_slot(Assume&, std::string_view) { return nullptr; }
inline Proof* child_slot(AndI& n, std::string_view c) {
  return c == "left" ? &n.left : c == "right" ? &n.right : nullptr;
}
inline Proof* child_slot(OrIL& n, std::string_view c) { return c == "premise" ? &n.premise : nullptr; }
inline Proof* child_slot(OrIR& n, std::string_view c) { return c == "premise" ? &n.premise : nullptr; }
inline Proof* child_slot(OrE& n, std::string_view c) {
  if (c == "disj") return &n.disj;
  if (c == "case1") return &n.left_case;
  return c == "case2" ? &n.right_case : nullptr;
}
inline Proof* child_slot(ImpE& n, std::string_view c) {
  return c == "ant" ? &n.ant : c == "imp" ? &n.imp : nullptr;
}
inline Proof* child_slot(ForallI& n, std::string_view c) { return c == "premise" ? &n.premise : nullptr; }
inline Proof* child_slot(ForallE& n, std::string_view c) { return c == "premise" ? &n.premise : nullptr; }
inline Proof* child_slot(ExistsI& n, std::string_view c) { return c == "premise" ? &n.premise : nullptr; }
inline Proof* child_slot(ExistsE& n, std::string_view c) {
  return c == "ex" ? &n.ex : c == "body" ? &n.body : nullptr;
}
inline Proof* child_slot(Ind& n, std::string_view c) {
  return c == "base" ? &n.base : c == "step" ? &n.step : nullptr;
}
inline Proof* child_slot(EqRule& n, std::string_view c) {
  return c == "eq" ? &n.eq : c == "premise" ? &n.premise : nullptr;
}

inline std::pair<std::string_view, std::string_view> split_path(std::string_view path) {
  auto dot = path.find('.');
  if (dot == std::string_view::npos) return {path, {}};
  return {path.substr(0, dot), path.substr(dot + 1)};
}

}  // namespace detail

/// The subproof at a dotted child path such as "premise.case1".
inline Proof subproof(const Proof& root, std::string_view path) {
  if (path.empty()) return root;
  auto [head, rest] = detail::split_path(path);
  return root.visit([&](auto n) -> Proof {
    Proof* slot = detail::child_slot(n, head);
    if (slot == nullptr) throw std::out_of_range("no child '" + std::string(head) + "'");
    return subproof(*slot, rest);
  });
}

/// Copy of `root` with the subproof at `path` replaced by `f(old)`.
template <class F>
Proof replace_at(const Proof& root, std::string_view path, F&& f) {
  if (path.empty()) return f(root);
  auto [head, rest] = detail::split_path(path);
  return root.visit([&](auto n) -> Proof {
    Proof* slot = detail::child_slot(n, head);
    if (slot == nullptr) throw std::out_of_range("no child '" + std::string(head) + "'");
    *slot = replace_at(*slot, rest, f);
    return n;
  });
}

// ---------------------------------------------------------------------------
// Checking

enum class CheckErrorKind { RuleMismatch, EigenvariableViolation, LabelClash, BadAxiomInstance };

inline std::string_view to_string(CheckErrorKind k) {
  switch (k) {
    case CheckErrorKind::RuleMismatch: return "RuleMismatch";
    case CheckErrorKind::EigenvariableViolation: return "EigenvariableViolation";
    case CheckErrorKind::LabelClash: return "LabelClash";
    case CheckErrorKind::BadAxiomInstance: return "BadAxiomInstance";
  }
  return "?";
}

/// A rejected proof. `path` names the offending node from the root, e.g.
/// "step.premise.case2"; the root itself is the empty path.
class CheckError : public std::runtime_error {
 public:
  CheckError(CheckErrorKind kind, std::string path, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " at " +
                           (path.empty() ? std::string("root") : path) + ": " + message),
        kind_(kind),
        path_(std::move(path)) {}

  CheckErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  CheckErrorKind kind_;
  std::string path_;
};

using Assumptions = std::map<std::string, Formula>;

struct CheckedProof {
  Proof proof;
  Formula conclusion;
  Assumptions open;
};

inline std::string child_path(const std::string& parent, std::string_view child) {
  return parent.empty() ? std::string(child) : parent + "." + std::string(child);
}

/// The instantiated axiom formula.
inline Formula axiom_conclusion(const Axiom& a, const std::string& path = {}) {
  using namespace logic;
  if (a.args.size() != axiom_arity(a.schema)) {
    throw CheckError(CheckErrorKind::BadAxiomInstance, path,
                     "axiom expects " + std::to_string(axiom_arity(a.schema)) + " term(s), got " +
                         std::to_string(a.args.size()));
  }
  const ArithTerm& t = a.args[0];
  switch (a.schema) {
    case AxiomKind::Refl:
      return eq(t, t);
    case AxiomKind::GeqRefl:
      return geq(t, t);
    case AxiomKind::GeqZero:
      return geq(t, azero());
    case AxiomKind::GeqSuccMono:
      return imp(geq(t, a.args[1]), geq(succ(t), succ(a.args[1])));
    case AxiomKind::ZeroOrSucc: {
      auto fv = free_vars(t);
      std::string y = "y";
      while (fv.count(y)) y += '\'';
      return disj(eq(t, azero()), exists(y, eq(t, succ(avar(y)))));
    }
  }
  throw CheckError(CheckErrorKind::BadAxiomInstance, path, "unknown axiom schema");
}

namespace detail {

inline void merge_into(Assumptions& into, const Assumptions& from, const std::string& path) {
  for (const auto& [label, f] : from) {
    auto [it, inserted] = into.try_emplace(label, f);
    if (!inserted && !logic::alpha_eq(it->second, f)) {
      throw CheckError(CheckErrorKind::LabelClash, path,
                       "label '" + label + "' tags both " + logic::to_string(it->second) + " and " +
                           logic::to_string(f));
    }
  }
}

[[noreturn]] inline void mismatch(const std::string& path, const std::string& what,
                                  const Formula& expected, const Formula& found) {
  throw CheckError(CheckErrorKind::RuleMismatch, path,
                   what + ": expected " + logic::to_string(expected) + ", found " +
                       logic::to_string(found));
}

inline void expect_formula(const std::string& path, const std::string& what, const Formula& expected,
                           const Formula& found) {
  if (!logic::alpha_eq(expected, found)) mismatch(path, what, expected, found);
}

// Removes `label` from `open`, checking that it tagged `expected`.
inline void discharge(Assumptions& open, const std::string& label, const Formula& expected,
                      const std::string& path) {
  auto it = open.find(label);
  if (it == open.end()) return;
  expect_formula(path, "discharged assumption '" + label + "'", expected, it->second);
  open.erase(it);
}

inline void require_not_free(const std::string& eigen, const Assumptions& open,
                             const std::string& path) {
  for (const auto& [label, f] : open) {
    if (logic::occurs_free(eigen, f)) {
      throw CheckError(CheckErrorKind::EigenvariableViolation, path,
                       "eigenvariable '" + eigen + "' is free in open assumption '" + label +
                           "': " + logic::to_string(f));
    }
  }
}

struct Judgement {
  Formula conclusion;
  Assumptions open;
};

inline Judgement check_node(const Proof& p, const std::string& path);

struct Checker {
  const std::string& path;

  Judgement sub(const Proof& p, std::string_view child) const {
    return check_node(p, child_path(path, child));
  }

  Judgement operator()(const Axiom& a) const { return {axiom_conclusion(a, path), {}}; }

  Judgement operator()(const Assume& a) const { return {a.formula, {{a.label, a.formula}}}; }

  Judgement operator()(const AndI& n) const {
    auto l = sub(n.left, "left");
    auto r = sub(n.right, "right");
    merge_into(l.open, r.open, path);
    return {logic::conj(l.conclusion, r.conclusion), std::move(l.open)};
  }

  Judgement operator()(const OrIL& n) const {
    auto p = sub(n.premise, "premise");
    return {logic::disj(p.conclusion, n.other), std::move(p.open)};
  }

  Judgement operator()(const OrIR& n) const {
    auto p = sub(n.premise, "premise");
    return {logic::disj(n.other, p.conclusion), std::move(p.open)};
  }

  Judgement operator()(const OrE& n) const {
    auto d = sub(n.disj, "disj");
    const auto* b = d.conclusion.get_if<Formula::Binary>();
    if (b == nullptr || b->op != Formula::Connective::Or) {
      throw CheckError(CheckErrorKind::RuleMismatch, path,
                       "or-elimination needs a disjunction, found " + logic::to_string(d.conclusion));
    }
    auto c1 = sub(n.left_case, "case1");
    auto c2 = sub(n.right_case, "case2");
    expect_formula(path, "conclusion of the second case", c1.conclusion, c2.conclusion);
    discharge(c1.open, n.left_label, b->lhs, path);
    discharge(c2.open, n.right_label, b->rhs, path);
    merge_into(d.open, c1.open, path);
    merge_into(d.open, c2.open, path);
    return {c1.conclusion, std::move(d.open)};
  }

  Judgement operator()(const ImpE& n) const {
    auto a = sub(n.ant, "ant");
    auto i = sub(n.imp, "imp");
    const auto* b = i.conclusion.get_if<Formula::Binary>();
    if (b == nullptr || b->op != Formula::Connective::Imp) {
      throw CheckError(CheckErrorKind::RuleMismatch, path,
                       "implication-elimination needs an implication, found " +
                           logic::to_string(i.conclusion));
    }
    expect_formula(path, "antecedent", b->lhs, a.conclusion);
    merge_into(a.open, i.open, path);
    return {b->rhs, std::move(a.open)};
  }

  Judgement operator()(const ForallI& n) const {
    auto p = sub(n.premise, "premise");
    require_not_free(n.eigen, p.open, path);
    return {logic::forall(n.eigen, p.conclusion), std::move(p.open)};
  }

  Judgement operator()(const ForallE& n) const {
    auto p = sub(n.premise, "premise");
    const auto* q = p.conclusion.get_if<Formula::Quant>();
    if (q == nullptr || q->q != Formula::Quantifier::Forall) {
      throw CheckError(CheckErrorKind::RuleMismatch, path,
                       "forall-elimination needs a universal formula, found " +
                           logic::to_string(p.conclusion));
    }
    return {logic::formula_subst(q->body, q->binder, n.witness), std::move(p.open)};
  }

  Judgement operator()(const ExistsI& n) const {
    auto p = sub(n.premise, "premise");
    expect_formula(path, "premise of exists-introduction",
                   logic::formula_subst(n.body, n.binder, n.witness), p.conclusion);
    return {logic::exists(n.binder, n.body), std::move(p.open)};
  }

  Judgement operator()(const ExistsE& n) const {
    auto e = sub(n.ex, "ex");
    const auto* q = e.conclusion.get_if<Formula::Quant>();
    if (q == nullptr || q->q != Formula::Quantifier::Exists) {
      throw CheckError(CheckErrorKind::RuleMismatch, path,
                       "exists-elimination needs an existential formula, found " +
                           logic::to_string(e.conclusion));
    }
    auto b = sub(n.body, "body");
    discharge(b.open, n.label, logic::formula_subst(q->body, q->binder, logic::avar(n.eigen)), path);
    if (logic::occurs_free(n.eigen, b.conclusion) || logic::occurs_free(n.eigen, e.conclusion)) {
      throw CheckError(CheckErrorKind::EigenvariableViolation, path,
                       "eigenvariable '" + n.eigen + "' occurs free in " +
                           logic::to_string(b.conclusion) + " or " + logic::to_string(e.conclusion));
    }
    require_not_free(n.eigen, b.open, path);
    require_not_free(n.eigen, e.open, path);
    merge_into(e.open, b.open, path);
    return {b.conclusion, std::move(e.open)};
  }

  Judgement operator()(const Ind& n) const {
    using namespace logic;
    auto base = sub(n.base, "base");
    auto step = sub(n.step, "step");
    Formula conclusion = forall(n.counter, n.motive);
    expect_formula(path, "induction base", formula_subst(n.motive, n.counter, azero()),
                   base.conclusion);
    expect_formula(path, "induction step",
                   formula_subst(n.motive, n.counter, succ(avar(n.step_eigen))), step.conclusion);
    discharge(step.open, n.hyp_label, formula_subst(n.motive, n.counter, avar(n.step_eigen)), path);
    if (occurs_free(n.step_eigen, conclusion)) {
      throw CheckError(CheckErrorKind::EigenvariableViolation, path,
                       "eigenvariable '" + n.step_eigen + "' occurs free in " + to_string(conclusion));
    }
    require_not_free(n.step_eigen, step.open, path);
    merge_into(base.open, step.open, path);
    return {conclusion, std::move(base.open)};
  }

  Judgement operator()(const EqRule& n) const {
    using namespace logic;
    auto e = sub(n.eq, "eq");
    auto p = sub(n.premise, "premise");
    expect_formula(path, "equation", eq(n.lhs, n.rhs), e.conclusion);
    expect_formula(path, "rewritten premise", formula_subst(n.motive, n.hole, n.rhs), p.conclusion);
    merge_into(e.open, p.open, path);
    return {formula_subst(n.motive, n.hole, n.lhs), std::move(e.open)};
  }
};

inline Judgement check_node(const Proof& p, const std::string& path) {
  return p.visit(Checker{path});
}

}  // namespace detail

/// Recomputes every conclusion bottom-up; throws CheckError.
inline CheckedProof check(const Proof& p) {
  auto j = detail::check_node(p, "");
  return {p, std::move(j.conclusion), std::move(j.open)};
}

namespace detail {

struct OpenCollector {
  const std::string& path;

  Assumptions sub(const Proof& p, std::string_view child) const {
    return p.visit(OpenCollector{child_path(path, child)});
  }
  Assumptions merged(Assumptions a, const Assumptions& b) const {
    merge_into(a, b, path);
    return a;
  }
  static Assumptions without(Assumptions a, const std::string& label) {
    a.erase(label);
    return a;
  }

  Assumptions operator()(const Axiom&) const { return {}; }
  Assumptions operator()(const Assume& a) const { return {{a.label, a.formula}}; }
  Assumptions operator()(const AndI& n) const { return merged(sub(n.left, "left"), sub(n.right, "right")); }
  Assumptions operator()(const OrIL& n) const { return sub(n.premise, "premise"); }
  Assumptions operator()(const OrIR& n) const { return sub(n.premise, "premise"); }
  Assumptions operator()(const OrE& n) const {
    auto out = merged(sub(n.disj, "disj"), without(sub(n.left_case, "case1"), n.left_label));
    return merged(std::move(out), without(sub(n.right_case, "case2"), n.right_label));
  }
  Assumptions operator()(const ImpE& n) const { return merged(sub(n.ant, "ant"), sub(n.imp, "imp")); }
  Assumptions operator()(const ForallI& n) const { return sub(n.premise, "premise"); }
  Assumptions operator()(const ForallE& n) const { return sub(n.premise, "premise"); }
  Assumptions operator()(const ExistsI& n) const { return sub(n.premise, "premise"); }
  Assumptions operator()(const ExistsE& n) const {
    return merged(sub(n.ex, "ex"), without(sub(n.body, "body"), n.label));
  }
  Assumptions operator()(const Ind& n) const {
    return merged(sub(n.base, "base"), without(sub(n.step, "step"), n.hyp_label));
  }
  Assumptions operator()(const EqRule& n) const {
    return merged(sub(n.eq, "eq"), sub(n.premise, "premise"));
  }
};

}  // namespace detail

/// Undischarged assumptions by label; throws CheckError(LabelClash).
inline Assumptions open_assumptions(const Proof& p) {
  std::string root;
  return p.visit(detail::OpenCollector{root});
}

}  // namespace realizer::kernel
