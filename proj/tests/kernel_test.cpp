#include <gtest/gtest.h>

#include "support.hpp"

using namespace realizer;
using namespace realizer::kernel;
using logic::aone;
using logic::avar;
using logic::azero;
using logic::parse_formula;
using logic::succ;

namespace {

Proof ax(AxiomKind k, std::vector<ArithTerm> args) { return Axiom{k, std::move(args)}; }

CheckErrorKind rejection(const Proof& p) {
  try {
    check(p);
  } catch (const CheckError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "proof was accepted";
  return CheckErrorKind::RuleMismatch;
}

std::string rejection_path(const Proof& p) {
  try {
    check(p);
  } catch (const CheckError& e) {
    return e.path();
  }
  return "<accepted>";
}

void expect_conclusion(const Proof& p, const std::string& formula) {
  auto cp = check(p);
  EXPECT_TRUE(logic::alpha_eq(cp.conclusion, parse_formula(formula)))
      << logic::to_string(cp.conclusion) << " vs " << formula;
}

}  // namespace

TEST(Axioms, Conclusions) {
  EXPECT_EQ(axiom_conclusion({AxiomKind::Refl, {succ(avar("x"))}}), parse_formula("x + 1 = x + 1"));
  EXPECT_EQ(axiom_conclusion({AxiomKind::GeqRefl, {avar("t")}}), parse_formula("t >= t"));
  EXPECT_EQ(axiom_conclusion({AxiomKind::GeqZero, {avar("t")}}), parse_formula("t >= 0"));
  EXPECT_EQ(axiom_conclusion({AxiomKind::ZeroOrSucc, {avar("x2")}}), parse_formula("x2 = 0 \\/ exists y. x2 = y + 1"));
  EXPECT_EQ(axiom_conclusion({AxiomKind::GeqSuccMono, {avar("n"), avar("y")}}),
            parse_formula("n >= y -> n + 1 >= y + 1"));
}

TEST(Axioms, ZeroOrSuccAvoidsCapture) {
  Formula f = axiom_conclusion({AxiomKind::ZeroOrSucc, {succ(avar("y"))}});
  EXPECT_TRUE(logic::alpha_eq(f, parse_formula("y + 1 = 0 \\/ exists w. y + 1 = w + 1")));
}

TEST(Axioms, ValidOnSmallValues) {
  using logic::eval_bounded;
  for (logic::Natural t = 0; t <= 6; ++t) {
    for (logic::Natural s = 0; s <= 6; ++s) {
      logic::Env env{{"t", t}, {"s", s}};
      for (auto k : {AxiomKind::Refl, AxiomKind::GeqRefl, AxiomKind::GeqZero, AxiomKind::ZeroOrSucc}) {
        EXPECT_TRUE(eval_bounded(axiom_conclusion({k, {avar("t")}}), env, 7));
      }
      EXPECT_TRUE(eval_bounded(axiom_conclusion({AxiomKind::GeqSuccMono, {avar("t"), avar("s")}}), env, 7));
    }
  }
}

TEST(Axioms, WrongArity) {
  EXPECT_THROW(axiom_conclusion({AxiomKind::Refl, {}}), CheckError);
  EXPECT_EQ(rejection(ax(AxiomKind::GeqSuccMono, {avar("x")})), CheckErrorKind::BadAxiomInstance);
  EXPECT_EQ(rejection(ax(AxiomKind::GeqZero, {avar("x"), avar("y")})), CheckErrorKind::BadAxiomInstance);
}

TEST(Check, Leaves) {
  auto cp = check(Assume{"h", parse_formula("0 = 0")});
  EXPECT_EQ(cp.conclusion, parse_formula("0 = 0"));
  ASSERT_EQ(cp.open.size(), 1u);
  EXPECT_EQ(cp.open.at("h"), parse_formula("0 = 0"));
  EXPECT_TRUE(check(ax(AxiomKind::Refl, {azero()})).open.empty());
}

TEST(Check, Introductions) {
  expect_conclusion(AndI{ax(AxiomKind::Refl, {azero()}), ax(AxiomKind::GeqZero, {aone()})}, "0 = 0 /\\ 1 >= 0");
  expect_conclusion(OrIL{parse_formula("1 = 0"), ax(AxiomKind::Refl, {azero()})}, "0 = 0 \\/ 1 = 0");
  expect_conclusion(OrIR{parse_formula("1 = 0"), ax(AxiomKind::Refl, {azero()})}, "1 = 0 \\/ 0 = 0");
  expect_conclusion(ForallI{"x", ax(AxiomKind::GeqZero, {avar("x")})}, "forall x. x >= 0");
  expect_conclusion(ExistsI{"y", parse_formula("y = 1"), aone(), ax(AxiomKind::Refl, {aone()})},
                    "exists y. y = 1");
}

TEST(Check, Eliminations) {
  expect_conclusion(ForallE{ForallI{"x", ax(AxiomKind::GeqZero, {avar("x")})}, succ(azero())}, "0 + 1 >= 0");
  expect_conclusion(ImpE{ax(AxiomKind::GeqZero, {avar("a")}), ax(AxiomKind::GeqSuccMono, {avar("a"), azero()})},
                    "a + 1 >= 0 + 1");
  expect_conclusion(OrE{ax(AxiomKind::ZeroOrSucc, {avar("a")}), "l", ax(AxiomKind::GeqZero, {avar("a")}), "r",
                        ax(AxiomKind::GeqZero, {avar("a")})},
                    "a >= 0");
  Proof exists_e = ExistsE{Assume{"e", parse_formula("exists y. a = y + 1")}, "w", "u",
                           EqRule{"h", parse_formula("h >= 1"), avar("a"), succ(avar("w")), Assume{"u", parse_formula("a = w + 1")},
                                  ImpE{ax(AxiomKind::GeqZero, {avar("w")}), ax(AxiomKind::GeqSuccMono, {avar("w"), azero()})}}};
  // w + 1 >= 0 + 1 is not literally w + 1 >= 1.
  EXPECT_EQ(rejection(exists_e), CheckErrorKind::RuleMismatch);
  Proof fixed = ExistsE{Assume{"e", parse_formula("exists y. a = y + 1")}, "w", "u",
                        EqRule{"h", parse_formula("h >= 0 + 1"), avar("a"), succ(avar("w")),
                               Assume{"u", parse_formula("a = w + 1")},
                               ImpE{ax(AxiomKind::GeqZero, {avar("w")}), ax(AxiomKind::GeqSuccMono, {avar("w"), azero()})}}};
  auto cp = check(fixed);
  EXPECT_EQ(cp.conclusion, parse_formula("a >= 0 + 1"));
  EXPECT_EQ(cp.open.size(), 1u);
  EXPECT_TRUE(cp.open.count("e"));
}

TEST(Check, SpecExamples) {
  EXPECT_EQ(rejection(ForallI{"x", Assume{"h", parse_formula("x >= 0")}}), CheckErrorKind::EigenvariableViolation);
  EXPECT_EQ(rejection(ExistsI{"y", parse_formula("y = 1"), azero(), ax(AxiomKind::Refl, {azero()})}),
            CheckErrorKind::RuleMismatch);
}

TEST(Check, RuleShapeMismatches) {
  Proof refl = ax(AxiomKind::Refl, {azero()});
  EXPECT_EQ(rejection(OrE{refl, "a", refl, "b", refl}), CheckErrorKind::RuleMismatch);
  EXPECT_EQ(rejection(ImpE{refl, refl}), CheckErrorKind::RuleMismatch);
  EXPECT_EQ(rejection(ForallE{refl, azero()}), CheckErrorKind::RuleMismatch);
  EXPECT_EQ(rejection(ExistsE{refl, "y", "h", refl}), CheckErrorKind::RuleMismatch);
  // Cases with different conclusions.
  EXPECT_EQ(rejection(OrE{ax(AxiomKind::ZeroOrSucc, {azero()}), "a", refl, "b", ax(AxiomKind::GeqZero, {azero()})}),
            CheckErrorKind::RuleMismatch);
  // Equality premise must be exactly lhs = rhs.
  EXPECT_EQ(rejection(EqRule{"h", parse_formula("h = h"), aone(), azero(), ax(AxiomKind::Refl, {aone()}), refl}),
            CheckErrorKind::RuleMismatch);
}

TEST(Check, DischargeBookkeeping) {
  // The discharged label must tag the disjunct it stands for.
  Proof wrong = OrE{ax(AxiomKind::ZeroOrSucc, {avar("a")}), "l", Assume{"l", parse_formula("a = 1")}, "r",
                    Assume{"l", parse_formula("a = 1")}};
  EXPECT_EQ(rejection(wrong), CheckErrorKind::RuleMismatch);
  // Unused labels are discharged vacuously; other labels stay open.
  auto cp = check(OrE{ax(AxiomKind::ZeroOrSucc, {avar("a")}), "l", Assume{"k", parse_formula("a = 1")}, "r",
                      Assume{"k", parse_formula("a = 1")}});
  EXPECT_EQ(cp.open.size(), 1u);
  EXPECT_TRUE(cp.open.count("k"));
}

TEST(Check, LabelClash) {
  Proof p = AndI{Assume{"h", parse_formula("0 = 0")}, Assume{"h", parse_formula("1 = 1")}};
  EXPECT_EQ(rejection(p), CheckErrorKind::LabelClash);
  EXPECT_THROW(open_assumptions(p), CheckError);
  // The same label for the same formula is fine.
  EXPECT_EQ(check(AndI{Assume{"h", parse_formula("0 = 0")}, Assume{"h", parse_formula("0 = 0")}}).open.size(), 1u);
}

TEST(Check, ExistsEigenvariable) {
  Proof ex = ExistsI{"y", parse_formula("y = y"), azero(), ax(AxiomKind::Refl, {azero()})};
  // eigenvariable escapes into the conclusion
  EXPECT_EQ(rejection(ExistsE{ex, "w", "h", Assume{"h", parse_formula("w = w")}}), CheckErrorKind::EigenvariableViolation);
  // eigenvariable free in another open assumption
  EXPECT_EQ(rejection(ExistsE{ex, "w", "h",
                              EqRule{"k", parse_formula("0 = 0"), avar("w"), azero(),
                                     Assume{"g", parse_formula("w = 0")}, ax(AxiomKind::Refl, {azero()})}}),
            CheckErrorKind::EigenvariableViolation);
  auto cp = check(ExistsE{ex, "w", "h", ax(AxiomKind::Refl, {azero()})});
  EXPECT_TRUE(cp.open.empty());
}

TEST(Check, InductionConditions) {
  Formula motive = parse_formula("x >= 0");
  Proof base = ax(AxiomKind::GeqZero, {azero()});
  Proof step = ax(AxiomKind::GeqZero, {succ(avar("n"))});
  expect_conclusion(Ind{"x", motive, base, "ih", "n", step}, "forall x. x >= 0");
  // Base for the wrong instance.
  EXPECT_EQ(rejection(Ind{"x", motive, ax(AxiomKind::GeqZero, {aone()}), "ih", "n", step}), CheckErrorKind::RuleMismatch);
  // Hypothesis for the wrong instance.
  Proof bad_hyp = AndI{Assume{"ih", parse_formula("n + 1 >= 0")}, step};
  EXPECT_EQ(rejection(Ind{"x", parse_formula("x >= 0 /\\ x >= 0"), AndI{base, base}, "ih", "n", bad_hyp}),
            CheckErrorKind::RuleMismatch);
  // Eigenvariable free in the motive.
  Formula leaky = parse_formula("x >= 0 \\/ n = n");
  EXPECT_EQ(rejection(Ind{"x", leaky, OrIL{parse_formula("n = n"), ax(AxiomKind::GeqZero, {azero()})}, "ih", "n",
                          OrIL{parse_formula("n = n"), ax(AxiomKind::GeqZero, {succ(avar("n"))})}}),
            CheckErrorKind::EigenvariableViolation);
}

TEST(Check, IsDeterministic) {
  for (const Proof& p : {harness::build_max_proof(), harness::build_lemma_proof()}) {
    auto a = check(p);
    auto b = check(a.proof);
    EXPECT_EQ(a.conclusion, b.conclusion);
    EXPECT_TRUE(a.open.empty());
  }
}

TEST(BuiltIns, Conclusions) {
  expect_conclusion(harness::build_lemma_proof(), "forall x1, x2. x1 >= x2 \\/ x2 >= x1");
  expect_conclusion(harness::build_max_proof(),
                    "forall x1, x2. exists y. y >= x1 /\\ y >= x2 /\\ (y = x1 \\/ y = x2)");
  EXPECT_TRUE(open_assumptions(harness::build_max_proof()).empty());
  EXPECT_TRUE(open_assumptions(harness::build_lemma_proof()).empty());
}

TEST(BuiltIns, OpenAssumptionsOfSubproofs) {
  auto open = open_assumptions(subproof(harness::build_lemma_proof(), "step.premise.case2.body.premise"));
  EXPECT_EQ(open.size(), 1u);
  EXPECT_EQ(open.at("IH"), parse_formula("forall x2. n >= x2 \\/ x2 >= n"));
  auto left = open_assumptions(subproof(harness::build_max_proof(), harness::kMaxLeft));
  EXPECT_EQ(left.size(), 1u);
  EXPECT_EQ(left.at("Y"), parse_formula("x1 >= x2"));
}

TEST(Mutants, AllRejectedWithDesignatedKind) {
  auto mutants = harness::mutation_suite();
  EXPECT_GE(mutants.size(), 6u);
  for (const auto& m : mutants) {
    EXPECT_EQ(rejection(m.proof), m.expected) << m.name;
  }
}

TEST(Mutants, ErrorPaths) {
  auto mutants = harness::mutation_suite();
  auto path_of = [&](const std::string& name) {
    for (const auto& m : mutants) {
      if (m.name == name) return rejection_path(m.proof);
    }
    return std::string("<missing>");
  };
  EXPECT_EQ(path_of("exists-i witness x2 where x1 is proved"), "premise.premise.case1");
  EXPECT_EQ(path_of("or-e case labels swapped"), "premise");
  EXPECT_EQ(path_of("induction base proves 1 >= x2 \\/ x2 >= 0"), "");
}

// An unused assumption beside a subtree leaves the subtree's verdict alone.
TEST(Mutants, WeakeningIrrelevance) {
  std::vector<std::pair<Proof, std::optional<CheckErrorKind>>> cases{
      {harness::build_max_proof(), std::nullopt}, {harness::build_lemma_proof(), std::nullopt}};
  for (const auto& m : harness::mutation_suite()) cases.emplace_back(m.proof, m.expected);
  for (const auto& [p, verdict] : cases) {
    Proof weakened = AndI{p, Assume{"unused_label", parse_formula("0 = 1")}};
    if (verdict) {
      EXPECT_EQ(rejection(weakened), *verdict);
    } else {
      auto cp = check(weakened);
      EXPECT_EQ(cp.open.size(), 1u);
    }
  }
}
