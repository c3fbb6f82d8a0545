#pragma once

// Built-in proofs (the maximum function and the comparison lemma it uses),
// semantic verification of extracted programs, and kernel mutants.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "realizer/extract.hpp"
#include "realizer/proof.hpp"
#include "realizer/reduce.hpp"

namespace realizer::harness {

using kernel::Proof;
using logic::ArithTerm;
using logic::Formula;
using logic::Natural;

namespace detail {

using namespace logic;
using namespace kernel;

inline ArithTerm v(const char* name) { return avar(name); }
inline Proof axiom(AxiomKind k, std::vector<ArithTerm> args) { return Axiom{k, std::move(args)}; }

}  // namespace detail

/// forall x2. x1 >= x2 \/ x2 >= x1
inline Formula lemma_motive() {
  using namespace detail;
  return forall("x2", disj(geq(v("x1"), v("x2")), geq(v("x2"), v("x1"))));
}

/// y >= x1 /\ (y >= x2 /\ (y = x1 \/ y = x2))
inline Formula max_spec_body() {
  using namespace detail;
  ArithTerm y = v("y"), x1 = v("x1"), x2 = v("x2");
  return conj(geq(y, x1), conj(geq(y, x2), disj(eq(y, x1), eq(y, x2))));
}

/// forall x1. forall x2. x1 >= x2 \/ x2 >= x1, by induction on x1.
inline Proof build_lemma_proof() {
  using namespace detail;
  ArithTerm x2 = v("x2"), n = v("n"), y = v("y");
  ArithTerm n1 = succ(n), y1 = succ(y);

  Proof base = ForallI{"x2", OrIR{geq(azero(), x2), axiom(AxiomKind::GeqZero, {x2})}};

  Proof phi_l = EqRule{"h",
                       disj(geq(n1, v("h")), geq(x2, n1)),
                       x2,
                       azero(),
                       Assume{"zero", eq(x2, azero())},
                       OrIL{geq(x2, n1), axiom(AxiomKind::GeqZero, {n1})}};

  Proof hyp = Assume{"IH", forall("x2", disj(geq(n, x2), geq(x2, n)))};
  Proof phi = OrE{ForallE{hyp, y},
                  "le",
                  OrIL{geq(y1, n1), ImpE{Assume{"le", geq(n, y)}, axiom(AxiomKind::GeqSuccMono, {n, y})}},
                  "ge",
                  OrIR{geq(n1, y1), ImpE{Assume{"ge", geq(y, n)}, axiom(AxiomKind::GeqSuccMono, {y, n})}}};

  Proof phi_r = ExistsE{Assume{"succ", exists("y", eq(x2, succ(v("y"))))},
                        "y",
                        "U",
                        EqRule{"h", disj(geq(n1, v("h")), geq(v("h"), n1)), x2, y1,
                               Assume{"U", eq(x2, y1)}, phi}};

  Proof step = ForallI{"x2", OrE{axiom(AxiomKind::ZeroOrSucc, {x2}), "zero", phi_l, "succ", phi_r}};

  return Ind{"x1", lemma_motive(), base, "IH", "n", step};
}

/// forall x1. forall x2. exists y. y >= x1 /\ (y >= x2 /\ (y = x1 \/ y = x2)),
/// with the lemma proof inlined.
inline Proof build_max_proof() {
  using namespace detail;
  ArithTerm x1 = v("x1"), x2 = v("x2");
  Formula F = max_spec_body();

  Proof left = ExistsI{"y", F, x1,
                       AndI{axiom(AxiomKind::GeqRefl, {x1}),
                            AndI{Assume{"Y", geq(x1, x2)},
                                 OrIL{eq(x1, x2), axiom(AxiomKind::Refl, {x1})}}}};
  Proof right = ExistsI{"y", F, x2,
                        AndI{Assume{"Z", geq(x2, x1)},
                             AndI{axiom(AxiomKind::GeqRefl, {x2}),
                                  OrIR{eq(x2, x1), axiom(AxiomKind::Refl, {x2})}}}};
  Proof lemma = ForallE{ForallE{build_lemma_proof(), x1}, x2};
  return ForallI{"x1", ForallI{"x2", OrE{lemma, "Y", left, "Z", right}}};
}

// ---------------------------------------------------------------------------
// Semantic verification

class NotPi2 : public std::runtime_error {
 public:
  explicit NotPi2(const std::string& what) : std::runtime_error("not a Pi2 statement: " + what) {}
};

/// forall x1 ... xk. exists y. G with G quantifier-free.
struct Pi2Shape {
  std::vector<std::string> inputs;
  std::string output;
  Formula matrix;
};

inline Pi2Shape pi2_shape(const Formula& f) {
  Pi2Shape s{{}, {}, f};
  const Formula* cur = &f;
  while (const auto* q = cur->get_if<Formula::Quant>()) {
    if (q->q != Formula::Quantifier::Forall) break;
    s.inputs.push_back(q->binder);
    cur = &q->body;
  }
  const auto* ex = cur->get_if<Formula::Quant>();
  if (ex == nullptr) throw NotPi2("expected an existential after the universal prefix");
  if (!logic::quantifier_free(ex->body)) throw NotPi2("matrix is not quantifier-free");
  for (std::size_t i = 0; i < s.inputs.size(); ++i) {
    for (std::size_t j = i + 1; j < s.inputs.size(); ++j) {
      if (s.inputs[i] == s.inputs[j]) throw NotPi2("repeated variable '" + s.inputs[i] + "'");
    }
  }
  s.output = ex->binder;
  s.matrix = ex->body;
  return s;
}

struct VerifyEntry {
  std::vector<Natural> inputs;
  /// Empty when evaluation got stuck or ran out of fuel.
  std::optional<Natural> witness;
  bool holds = false;
  std::uint64_t steps = 0;
};

struct VerifyReport {
  Formula spec;
  Natural bound = 0;
  std::vector<VerifyEntry> results;
  bool all_pass = true;

  std::size_t pass_count() const {
    std::size_t n = 0;
    for (const auto& e : results) n += e.holds ? 1 : 0;
    return n;
  }
};

/// Witness computed by a realizer: left of its application to the inputs.
inline VerifyEntry run_realizer(const lambda::Term& realizer, const std::vector<Natural>& inputs,
                                std::uint64_t fuel) {
  lambda::Term t = realizer;
  for (Natural a : inputs) t = lambda::app(t, lambda::numeral(a));
  auto r = lambda::reduce(lambda::left(t), fuel);
  VerifyEntry e;
  e.inputs = inputs;
  e.steps = r.steps;
  if (r.normal) e.witness = r.term.arithmetical();
  return e;
}

inline VerifyReport verify_pi2(const kernel::CheckedProof& cp, Natural bound,
                               std::uint64_t fuel = lambda::kDefaultFuel) {
  if (!cp.open.empty()) throw NotPi2("proof has open assumption '" + cp.open.begin()->first + "'");
  Pi2Shape shape = pi2_shape(cp.conclusion);
  lambda::Term realizer = extraction::extract(cp);
  VerifyReport report{cp.conclusion, bound, {}, true};

  std::vector<Natural> inputs(shape.inputs.size(), 0);
  for (;;) {
    VerifyEntry e = run_realizer(realizer, inputs, fuel);
    if (e.witness) {
      logic::Env env;
      for (std::size_t i = 0; i < inputs.size(); ++i) env[shape.inputs[i]] = inputs[i];
      env[shape.output] = *e.witness;
      e.holds = logic::eval_qf(shape.matrix, env);
    }
    report.all_pass = report.all_pass && e.holds;
    report.results.push_back(std::move(e));

    // Next tuple, last position fastest.
    std::size_t k = inputs.size();
    while (k > 0 && inputs[k - 1] == bound) inputs[--k] = 0;
    if (k == 0) break;
    ++inputs[k - 1];
  }
  return report;
}

/// Tag of the comparison lemma's realizer on a and b: 0 claims a >= b,
/// 1 claims b >= a.
inline std::optional<Natural> comparator_tag(const lambda::Term& lemma, Natural a, Natural b,
                                             std::uint64_t fuel = lambda::kDefaultFuel) {
  return run_realizer(lemma, {a, b}, fuel).witness;
}

inline bool comparator_semantics(Natural bound, std::uint64_t fuel = lambda::kDefaultFuel) {
  lambda::Term lemma = extraction::extract(build_lemma_proof());
  for (Natural a = 0; a <= bound; ++a) {
    for (Natural b = 0; b <= bound; ++b) {
      auto tag = comparator_tag(lemma, a, b, fuel);
      if (!tag) return false;
      if (*tag == 0 && !(a >= b)) return false;
      if (*tag == 1 && !(b >= a)) return false;
      if (*tag > 1) return false;
    }
  }
  return true;
}

/// (a, steps to normalize the lemma realizer applied to a and a).
inline std::vector<std::pair<Natural, std::uint64_t>> linearity_probe(
    const std::vector<Natural>& sizes, std::uint64_t fuel = lambda::kDefaultFuel) {
  lambda::Term lemma = extraction::extract(build_lemma_proof());
  std::vector<std::pair<Natural, std::uint64_t>> out;
  for (Natural a : sizes) {
    out.emplace_back(a, lambda::step_count(lambda::app(lemma, lambda::numeral(a), lambda::numeral(a)), fuel));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutants

struct Mutant {
  std::string name;
  Proof proof;
  kernel::CheckErrorKind expected;
};

// Paths into the built-in proofs.
inline constexpr const char* kMaxCases = "premise.premise";
inline constexpr const char* kMaxLeft = "premise.premise.case1";
inline constexpr const char* kMaxRight = "premise.premise.case2";
inline constexpr const char* kLemmaZeroCase = "step.premise.case1";
inline constexpr const char* kLemmaInner = "step.premise.case2.body.premise";

inline std::vector<Mutant> mutation_suite() {
  using namespace detail;
  using kernel::CheckErrorKind;
  using kernel::replace_at;
  const Proof max = build_max_proof();
  const Proof lemma = build_lemma_proof();
  ArithTerm x1 = v("x1"), x2 = v("x2"), n = v("n"), y = v("y");
  std::vector<Mutant> out;

  out.push_back({"exists-i witness x2 where x1 is proved", replace_at(max, kMaxLeft, [&](const Proof& p) {
                   auto e = *p.get_if<ExistsI>();
                   e.witness = x2;
                   return Proof(e);
                 }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"induction eigenvariable free in an extra open assumption",
                 replace_at(lemma, std::string(kLemmaZeroCase) + ".premise.premise",
                            [&](const Proof&) { return Proof(Assume{"extra", geq(succ(n), azero())}); }),
                 CheckErrorKind::EigenvariableViolation});

  out.push_back({"or-e case labels swapped", replace_at(max, kMaxCases, [&](const Proof& p) {
                   auto e = *p.get_if<OrE>();
                   std::swap(e.left_label, e.right_label);
                   return Proof(e);
                 }),
                 CheckErrorKind::EigenvariableViolation});

  out.push_back({"equality motive rewrites both sides", replace_at(lemma, kLemmaZeroCase, [&](const Proof& p) {
                   auto e = *p.get_if<EqRule>();
                   e.motive = disj(geq(succ(n), v("h")), geq(v("h"), succ(n)));
                   return Proof(e);
                 }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"induction base proves 1 >= x2 \\/ x2 >= 0", replace_at(lemma, "base.premise", [&](const Proof& p) {
                   auto e = *p.get_if<OrIR>();
                   e.other = geq(aone(), x2);
                   return Proof(e);
                 }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"imp-e antecedent does not match", replace_at(lemma, std::string(kLemmaInner) + ".case1.premise.imp",
                                                               [&](const Proof&) {
                                                                 return axiom(AxiomKind::GeqSuccMono, {y, n});
                                                               }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"or-i disjuncts swapped", replace_at(max, std::string(kMaxLeft) + ".premise.right.right",
                                                      [&](const Proof& p) {
                                                        auto e = *p.get_if<OrIL>();
                                                        return Proof(OrIR{e.other, e.premise});
                                                      }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"and-i premises swapped", replace_at(max, std::string(kMaxLeft) + ".premise", [&](const Proof& p) {
                   auto e = *p.get_if<AndI>();
                   return Proof(AndI{e.right, e.left});
                 }),
                 CheckErrorKind::RuleMismatch});

  out.push_back({"one label for two formulas", replace_at(max, std::string(kMaxLeft) + ".premise.left",
                                                          [&](const Proof&) {
                                                            return Proof(Assume{"Y", geq(x1, x1)});
                                                          }),
                 CheckErrorKind::LabelClash});

  out.push_back({"monotonicity axiom with one term", replace_at(lemma, std::string(kLemmaInner) + ".case2.premise.imp",
                                                                [&](const Proof&) {
                                                                  return axiom(AxiomKind::GeqSuccMono, {y});
                                                                }),
                 CheckErrorKind::BadAxiomInstance});

  return out;
}

}  // namespace realizer::harness
