#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>

#include "support.hpp"

using namespace realizer;
using namespace realizer::cli;
using testing_support::read_file;
using testing_support::source_path;

namespace {

struct Out {
  std::ostringstream out, err;
};

// A scratch proof file removed when the test ends.
class TempProof {
 public:
  explicit TempProof(const std::string& text) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("realizer_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".nd"))
                .string();
    std::ofstream(path_) << text;
  }
  ~TempProof() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

const std::string max_nd = source_path("proofs/max.nd");
const std::string lemma_nd = source_path("proofs/lemma_geq.nd");

}  // namespace

TEST(Check, Max) {
  Out o;
  EXPECT_EQ(cmd_check(max_nd, o.out, o.err), kExitOk);
  EXPECT_EQ(o.out.str(),
            "forall x1. forall x2. exists y. y >= x1 /\\ y >= x2 /\\ (y = x1 \\/ y = x2)\n"
            "open assumptions: none\n");
  EXPECT_TRUE(o.err.str().empty());
}

TEST(Check, ListsOpenAssumptions) {
  TempProof f("(and-i (assume a \"x = 0\") (assume b \"0 = 0\"))");
  Out o;
  EXPECT_EQ(cmd_check(f.path(), o.out, o.err), kExitOk);
  EXPECT_EQ(o.out.str(), "x = 0 /\\ 0 = 0\nopen assumptions:\n  a: x = 0\n  b: 0 = 0\n");
}

TEST(Check, ParseErrorHasLocation) {
  TempProof f("(and-i\n  (refl 0)\n  (refl 0)");
  Out o;
  EXPECT_EQ(cmd_check(f.path(), o.out, o.err), kExitFail);
  EXPECT_EQ(o.err.str().rfind(f.path() + ":", 0), 0u) << o.err.str();
  EXPECT_TRUE(o.out.str().empty());
}

TEST(Check, KernelErrorHasLocation) {
  std::string text = read_file("proofs/lemma_geq.nd");
  auto at = text.find("(geq-succ-mono n y)");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 19, "(geq-succ-mono y n)");
  TempProof f(text);
  Out o;
  EXPECT_EQ(cmd_check(f.path(), o.out, o.err), kExitFail);
  EXPECT_NE(o.err.str().find(f.path() + ":31:"), std::string::npos) << o.err.str();
  EXPECT_NE(o.err.str().find("step.premise.case2.body.premise.case1.premise"), std::string::npos) << o.err.str();
}

TEST(Check, MissingFile) {
  Out o;
  EXPECT_EQ(cmd_check("/nonexistent/proof.nd", o.out, o.err), kExitFail);
  EXPECT_FALSE(o.err.str().empty());
}

TEST(Check, Mutants) {
  for (const auto& m : harness::mutation_suite()) {
    TempProof f(kernel::print_proof_script(m.proof));
    Out o;
    EXPECT_EQ(cmd_check(f.path(), o.out, o.err), kExitFail) << m.name;
    EXPECT_NE(o.err.str().find(kernel::to_string(m.expected)), std::string::npos) << m.name << ": " << o.err.str();
  }
}

TEST(Extract, Deterministic) {
  Out a, b;
  EXPECT_EQ(cmd_extract(max_nd, a.out, a.err), kExitOk);
  EXPECT_EQ(cmd_extract(max_nd, b.out, b.err), kExitOk);
  EXPECT_EQ(a.out.str(), b.out.str());
}

TEST(Extract, Refl) {
  Out o;
  EXPECT_EQ(cmd_extract(source_path("proofs/refl.nd"), o.out, o.err), kExitOk);
  EXPECT_EQ(o.out.str(), "eps\n");
}

TEST(Extract, OutputReparses) {
  Out o;
  ASSERT_EQ(cmd_extract(lemma_nd, o.out, o.err), kExitOk);
  lambda::Term t = lambda::parse_term(o.out.str());
  EXPECT_EQ(t, extraction::extract(harness::build_lemma_proof()));
  EXPECT_EQ(lambda::normalize(lambda::left(lambda::app(t, lambda::numeral(3), lambda::numeral(2)))), lambda::zero());
}

TEST(Run, Max) {
  for (auto [a, b, want] : {std::tuple<Natural, Natural, Natural>{2, 5, 5}, {0, 0, 0}, {7, 3, 7}}) {
    Out o;
    EXPECT_EQ(cmd_run(max_nd, {a, b}, lambda::kDefaultFuel, o.out, o.err), kExitOk);
    EXPECT_EQ(o.out.str(), std::to_string(want) + "\n");
  }
}

TEST(Run, ArityMismatch) {
  Out o;
  EXPECT_EQ(cmd_run(max_nd, {1}, lambda::kDefaultFuel, o.out, o.err), kExitFail);
  EXPECT_NE(o.err.str().find("ArityMismatch"), std::string::npos);
  EXPECT_TRUE(o.out.str().empty());
}

TEST(Run, FuelExhausted) {
  Out o;
  EXPECT_EQ(cmd_run(max_nd, {4, 4}, 1, o.out, o.err), kExitFail);
  EXPECT_NE(o.err.str().find("FuelExhausted"), std::string::npos);
}

TEST(Run, NonPi2) {
  Out o;
  EXPECT_EQ(cmd_run(source_path("proofs/non_pi2.nd"), {1}, lambda::kDefaultFuel, o.out, o.err), kExitFail);
  EXPECT_NE(o.err.str().find("Pi2"), std::string::npos);
}

TEST(Verify, Max) {
  Out o;
  EXPECT_EQ(cmd_verify(max_nd, 15, lambda::kDefaultFuel, o.out, o.err), kExitOk);
  EXPECT_NE(o.out.str().find("256/256 pass\n"), std::string::npos);
  EXPECT_NE(o.out.str().find("max steps: "), std::string::npos);
}

TEST(Verify, StuckEntriesAreReported) {
  Out o;
  EXPECT_EQ(cmd_verify(max_nd, 1, 1, o.out, o.err), kExitFail);
  EXPECT_NE(o.out.str().find("fail (0, 0): stuck"), std::string::npos) << o.out.str();
  EXPECT_NE(o.out.str().find("0/4 pass"), std::string::npos);
}

TEST(Verify, NonPi2) {
  Out o;
  EXPECT_EQ(cmd_verify(source_path("proofs/non_pi2.nd"), 3, lambda::kDefaultFuel, o.out, o.err), kExitFail);
  EXPECT_FALSE(o.err.str().empty());
}
