#pragma once

// Shared helpers for the test suites: source paths, random generators and a
// locally nameless encoding used as an independent oracle for substitution
// and alpha-equivalence.

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "realizer/realizer.hpp"

namespace testing_support {

using namespace realizer;

inline std::string source_path(const std::string& rel) { return std::string(REALIZER_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& rel) {
  std::ifstream in(source_path(rel));
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------
// Locally nameless terms: bound variables are de Bruijn indices, free ones
// keep their names. Alpha-equivalent terms have equal encodings.

struct LN {
  enum Kind { Bound, Free, Const, App, Lam } kind;
  std::size_t index = 0;
  std::string name;
  lambda::ConstKind c = lambda::ConstKind::Zero;
  std::shared_ptr<LN> a, b;

  friend bool operator==(const LN& x, const LN& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Bound: return x.index == y.index;
      case Free: return x.name == y.name;
      case Const: return x.c == y.c;
      case App: return *x.a == *y.a && *x.b == *y.b;
      case Lam: return *x.a == *y.a;
    }
    return false;
  }
};

inline std::shared_ptr<LN> to_ln(const lambda::Term& t, std::vector<std::string>& scope) {
  auto n = std::make_shared<LN>();
  if (const auto* v = t.get_if<lambda::Var>()) {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == v->name) {
        n->kind = LN::Bound;
        n->index = scope.size() - 1 - i;
        return n;
      }
    }
    n->kind = LN::Free;
    n->name = v->name;
  } else if (const auto* c = t.get_if<lambda::Const>()) {
    n->kind = LN::Const;
    n->c = c->kind;
  } else if (const auto* a = t.get_if<lambda::App>()) {
    n->kind = LN::App;
    n->a = to_ln(a->fun, scope);
    n->b = to_ln(a->arg, scope);
  } else {
    const auto& l = *t.get_if<lambda::Lam>();
    n->kind = LN::Lam;
    scope.push_back(l.binder);
    n->a = to_ln(l.body, scope);
    scope.pop_back();
  }
  return n;
}

inline LN to_ln(const lambda::Term& t) {
  std::vector<std::string> scope;
  return *to_ln(t, scope);
}

// Substitution is plain replacement of free occurrences: bound variables are
// indices, so nothing can be captured.
inline std::shared_ptr<LN> ln_subst(const std::shared_ptr<LN>& t, const std::string& x,
                                    const std::shared_ptr<LN>& s) {
  switch (t->kind) {
    case LN::Free:
      return t->name == x ? s : t;
    case LN::Bound:
    case LN::Const:
      return t;
    case LN::App: {
      auto n = std::make_shared<LN>(*t);
      n->a = ln_subst(t->a, x, s);
      n->b = ln_subst(t->b, x, s);
      return n;
    }
    case LN::Lam: {
      auto n = std::make_shared<LN>(*t);
      n->a = ln_subst(t->a, x, s);
      return n;
    }
  }
  return t;
}

inline LN ln_subst(const LN& t, const std::string& x, const LN& s) {
  return *ln_subst(std::make_shared<LN>(t), x, std::make_shared<LN>(s));
}

// ---------------------------------------------------------------------------
// Random generators

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }

  std::string name() {
    static const char* names[] = {"x", "y", "z", "x'"};
    return names[below(4)];
  }

  lambda::Term term(int depth) {
    using namespace lambda;
    if (depth <= 0 || below(4) == 0) {
      switch (below(4)) {
        case 0: return var(name());
        case 1: return cnst(static_cast<ConstKind>(below(10)));
        case 2: return numeral(below(4));
        default: return eps();
      }
    }
    switch (below(5)) {
      case 0:
      case 1: return lam(name(), term(depth - 1));
      case 2: return pair(term(depth - 1), term(depth - 1));
      default: return app(term(depth - 1), term(depth - 1));
    }
  }

  logic::ArithTerm arith(int depth, bool closed = false) {
    using namespace logic;
    if (depth <= 0 || below(3) == 0) {
      switch (below(closed ? 2 : 3)) {
        case 0: return azero();
        case 1: return aone();
        default: return avar(name());
      }
    }
    return aplus(arith(depth - 1, closed), arith(depth - 1, closed));
  }

  logic::Formula formula(int depth) {
    using namespace logic;
    if (depth <= 0 || below(3) == 0) {
      return coin() ? eq(arith(2), arith(2)) : geq(arith(2), arith(2));
    }
    switch (below(5)) {
      case 0: return conj(formula(depth - 1), formula(depth - 1));
      case 1: return disj(formula(depth - 1), formula(depth - 1));
      case 2: return imp(formula(depth - 1), formula(depth - 1));
      case 3: return forall(name(), formula(depth - 1));
      default: return exists(name(), formula(depth - 1));
    }
  }

  logic::Formula qf_formula(int depth) {
    using namespace logic;
    if (depth <= 0 || below(3) == 0) {
      return coin() ? eq(arith(2), arith(2)) : geq(arith(2), arith(2));
    }
    switch (below(3)) {
      case 0: return conj(qf_formula(depth - 1), qf_formula(depth - 1));
      case 1: return disj(qf_formula(depth - 1), qf_formula(depth - 1));
      default: return imp(qf_formula(depth - 1), qf_formula(depth - 1));
    }
  }

 private:
  std::mt19937 rng_;
};

}  // namespace testing_support
