#pragma once

// Computational content of proofs.
//
// An assumption labeled L becomes the variable h_L. Axioms carry no content
// (eps) except t >= s -> t+1 >= s+1, which gets \x. eps, and
// t = 0 \/ exists y. t = y + 1, whose content is the decision and the
// predecessor.

#include <string>

#include "realizer/proof.hpp"
#include "realizer/term.hpp"

namespace realizer::extraction {

using kernel::Proof;
using lambda::Term;

inline std::string assumption_var(const std::string& label) { return "h_" + label; }

inline Term embed_arith(const logic::ArithTerm& t) {
  if (const auto* v = t.get_if<logic::ArithTerm::Var>()) return lambda::var(v->name);
  if (t.get_if<logic::ArithTerm::Zero>()) return lambda::zero();
  if (t.get_if<logic::ArithTerm::One>()) return lambda::one();
  const auto& p = *t.get_if<logic::ArithTerm::Plus>();
  return lambda::plus(embed_arith(p.lhs), embed_arith(p.rhs));
}

inline Term extract_axiom(const kernel::Axiom& a) {
  using namespace lambda;
  kernel::axiom_conclusion(a);  // arity check
  switch (a.schema) {
    case kernel::AxiomKind::Refl:
    case kernel::AxiomKind::GeqRefl:
    case kernel::AxiomKind::GeqZero:
      return eps();
    case kernel::AxiomKind::GeqSuccMono:
      return lam("x", eps());
    case kernel::AxiomKind::ZeroOrSucc: {
      Term t = embed_arith(a.args[0]);
      return pair(is_zero(t), ite(is_zero(t), eps(), pair(cut_minus(t, one()), eps())));
    }
  }
  return eps();
}

namespace detail {

// "u", "u1", "u2", ... avoiding the free variables of `terms`.
inline std::string fresh_u(std::initializer_list<const Term*> terms) {
  auto taken = [&](const std::string& name) {
    for (const Term* t : terms) {
      if (t->has_free(name)) return true;
    }
    return false;
  };
  std::string name = "u";
  for (int k = 1; taken(name); ++k) name = "u" + std::to_string(k);
  return name;
}

struct Extractor {
  Term operator()(const kernel::Axiom& a) const { return extract_axiom(a); }

  Term operator()(const kernel::Assume& a) const { return lambda::var(assumption_var(a.label)); }

  Term operator()(const kernel::AndI& n) const {
    return lambda::pair(n.left.visit(*this), n.right.visit(*this));
  }

  Term operator()(const kernel::OrIL& n) const {
    return lambda::pair(lambda::zero(), n.premise.visit(*this));
  }

  Term operator()(const kernel::OrIR& n) const {
    return lambda::pair(lambda::one(), n.premise.visit(*this));
  }

  Term operator()(const kernel::OrE& n) const {
    using namespace lambda;
    Term d = n.disj.visit(*this);
    Term l = substitute(n.left_case.visit(*this), assumption_var(n.left_label), right(d));
    Term r = substitute(n.right_case.visit(*this), assumption_var(n.right_label), right(d));
    return ite(left(d), std::move(l), std::move(r));
  }

  Term operator()(const kernel::ImpE& n) const {
    return lambda::app(n.imp.visit(*this), n.ant.visit(*this));
  }

  Term operator()(const kernel::ForallI& n) const {
    return lambda::lam(n.eigen, n.premise.visit(*this));
  }

  Term operator()(const kernel::ForallE& n) const {
    return lambda::app(n.premise.visit(*this), embed_arith(n.witness));
  }

  Term operator()(const kernel::ExistsI& n) const {
    return lambda::pair(embed_arith(n.witness), n.premise.visit(*this));
  }

  Term operator()(const kernel::ExistsE& n) const {
    using namespace lambda;
    Term e = n.ex.visit(*this);
    Term body = substitute(n.body.visit(*this), n.eigen, left(e));
    return substitute(body, assumption_var(n.label), right(e));
  }

  Term operator()(const kernel::Ind& n) const {
    using namespace lambda;
    Term base = n.base.visit(*this);
    Term step = lam(n.step_eigen, lam(assumption_var(n.hyp_label), n.step.visit(*this)));
    std::string u = fresh_u({&base, &step});
    return lam(u, rec(std::move(base), std::move(step), var(u)));
  }

  Term operator()(const kernel::EqRule& n) const { return n.premise.visit(*this); }
};

}  // namespace detail

/// Extraction of an arbitrary proof tree; meaningful for proofs that check.
inline Term extract(const Proof& p) { return p.visit(detail::Extractor{}); }

inline Term extract(const kernel::CheckedProof& cp) { return extract(cp.proof); }

}  // namespace realizer::extraction
