#include <gtest/gtest.h>

#include "support.hpp"

using namespace realizer;
using namespace realizer::lambda;
using testing_support::Gen;
using testing_support::to_ln;

TEST(Term, FreeVariables) {
  EXPECT_EQ(free_vars(eps()), (std::set<std::string>{std::string(kEpsilon)}));
  EXPECT_EQ(free_vars(lam("x", app(var("x"), var("y")))), (std::set<std::string>{"y"}));
  EXPECT_TRUE(free_vars(numeral(3)).empty());
  EXPECT_TRUE(lam("x", eps()).has_free(kEpsilon));
}

TEST(Term, Numerals) {
  EXPECT_EQ(numeral(0), zero());
  EXPECT_EQ(numeral(2), plus(plus(zero(), one()), one()));
  EXPECT_TRUE(numeral(5).canonical_numeral());
  EXPECT_FALSE(plus(one(), one()).canonical_numeral());
  EXPECT_FALSE(one().canonical_numeral());
}

TEST(Term, NumeralDenotationRoundTrip) {
  for (Natural n = 0; n <= 10'000; ++n) {
    Term t = numeral(n);
    ASSERT_EQ(denote_arithmetical(t), n);
    ASSERT_TRUE(t.canonical_numeral());
  }
}

TEST(Term, Denotation) {
  EXPECT_EQ(denote_arithmetical(plus(one(), plus(one(), one()))), 3u);
  EXPECT_EQ(denote_arithmetical(one()), 1u);
  EXPECT_FALSE(denote_arithmetical(plus(var("x"), one())).has_value());
  EXPECT_FALSE(denote_arithmetical(cut_minus(one(), zero())).has_value());
  EXPECT_FALSE(denote_arithmetical(cnst(ConstKind::Plus)).has_value());
}

TEST(Substitute, Basics) {
  EXPECT_EQ(substitute(var("x"), "x", one()), one());
  EXPECT_EQ(substitute(var("y"), "x", one()), var("y"));
  EXPECT_EQ(substitute(lam("x", var("x")), "x", one()), lam("x", var("x")));
  EXPECT_EQ(substitute(eps(), "x", one()), eps());
}

TEST(Substitute, AvoidsCapture) {
  Term r = substitute(lam("y", var("x")), "x", var("y"));
  const auto* l = r.get_if<Lam>();
  ASSERT_NE(l, nullptr);
  EXPECT_NE(l->binder, "y");
  EXPECT_EQ(l->body, var("y"));
  EXPECT_TRUE(alpha_eq(r, lam("z", var("y"))));
}

TEST(Substitute, AgreesWithLocallyNamelessOracle) {
  Gen g(11);
  for (int i = 0; i < 3000; ++i) {
    Term t = g.term(5);
    Term s = g.term(3);
    std::string x = g.name();
    ASSERT_EQ(to_ln(substitute(t, x, s)), testing_support::ln_subst(to_ln(t), x, to_ln(s)))
        << to_string(t) << " [" << x << " := " << to_string(s) << "]";
  }
}

TEST(Substitute, FreeVariablesOfResult) {
  Gen g(12);
  for (int i = 0; i < 2000; ++i) {
    Term t = g.term(5);
    Term s = g.term(3);
    std::string x = g.name();
    auto expected = free_vars(t);
    if (expected.erase(x) > 0) {
      auto fs = free_vars(s);
      expected.insert(fs.begin(), fs.end());
    }
    ASSERT_EQ(free_vars(substitute(t, x, s)), expected);
  }
}

TEST(AlphaEq, Examples) {
  EXPECT_TRUE(alpha_eq(lam("x", var("x")), lam("y", var("y"))));
  EXPECT_TRUE(alpha_eq(lam("x", eps()), lam("y", eps())));
  EXPECT_FALSE(alpha_eq(lam("x", var("y")), lam("y", var("y"))));
  EXPECT_FALSE(alpha_eq(var("x"), var("y")));
  EXPECT_TRUE(alpha_eq(lam("x", lam("y", app(var("x"), var("y")))), lam("y", lam("x", app(var("y"), var("x"))))));
  EXPECT_FALSE(alpha_eq(lam("x", lam("y", var("x"))), lam("x", lam("y", var("y")))));
}

TEST(AlphaEq, AgreesWithLocallyNamelessOracle) {
  Gen g(13);
  for (int i = 0; i < 3000; ++i) {
    Term a = g.term(4);
    Term b = g.coin() ? g.term(4) : substitute(a, g.name(), var(g.name()));
    ASSERT_EQ(alpha_eq(a, b), to_ln(a) == to_ln(b)) << to_string(a) << " vs " << to_string(b);
  }
}

TEST(TermSyntax, Parse) {
  EXPECT_EQ(parse_term("\\x. x"), lam("x", var("x")));
  EXPECT_EQ(parse_term("lam x y. x"), lam("x", lam("y", var("x"))));
  EXPECT_EQ(parse_term("f a b"), app(var("f"), var("a"), var("b")));
  EXPECT_EQ(parse_term("0 + 1 + 1"), numeral(2));
  EXPECT_EQ(parse_term("x -. 1"), cut_minus(var("x"), one()));
  EXPECT_EQ(parse_term("(a, b)"), pair(var("a"), var("b")));
  EXPECT_EQ(parse_term("pair a b"), pair(var("a"), var("b")));
  EXPECT_EQ(parse_term("eps"), eps());
  EXPECT_EQ(parse_term("ite (isZero x) eps (x -. 1, eps)"),
            ite(is_zero(var("x")), eps(), pair(cut_minus(var("x"), one()), eps())));
  EXPECT_EQ(parse_term("R b s n"), rec(var("b"), var("s"), var("n")));
  EXPECT_EQ(parse_term("(+)"), cnst(ConstKind::Plus));
  EXPECT_EQ(parse_term("+ + +"), app(cnst(ConstKind::Plus), cnst(ConstKind::Plus), cnst(ConstKind::Plus)));
  EXPECT_EQ(parse_term("f \\x. x"), app(var("f"), lam("x", var("x"))));
}

TEST(TermSyntax, Errors) {
  EXPECT_THROW(parse_term("\\eps. x"), ParseError);
  EXPECT_THROW(parse_term("(x"), ParseError);
  EXPECT_THROW(parse_term("x )"), ParseError);
  EXPECT_THROW(parse_term("#"), ParseError);
  try {
    parse_term("f\n  (x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 2);
  }
}

TEST(TermSyntax, PrintParseRoundTrip) {
  Gen g(14);
  for (int i = 0; i < 3000; ++i) {
    Term t = g.term(5);
    std::string s = to_string(t);
    Term back = parse_term(s);
    ASSERT_TRUE(alpha_eq(t, back)) << s << " reparsed as " << to_string(back);
  }
}

TEST(TermSyntax, PrintsEpsilonAsEps) {
  EXPECT_EQ(to_string(lam("x", eps())), "\\x. eps");
  EXPECT_EQ(to_string(pair(zero(), eps())), "(0, eps)");
}
