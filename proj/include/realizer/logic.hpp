#pragma once

// First-order formulas over the signature {0, 1, +, =, >=} and their
// semantics in the natural numbers.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace realizer::logic {

using Natural = std::uint64_t;

// ---------------------------------------------------------------------------
// Arithmetic terms

class ArithTerm {
 public:
  struct Var {
    std::string name;
    bool operator==(const Var&) const = default;
  };
  struct Zero {
    bool operator==(const Zero&) const = default;
  };
  struct One {
    bool operator==(const One&) const = default;
  };
  struct Plus;

  ArithTerm() : ArithTerm(Zero{}) {}
  ArithTerm(Var v);
  ArithTerm(Zero z);
  ArithTerm(One o);
  ArithTerm(Plus p);

  template <class T>
  const T* get_if() const;

  friend bool operator==(const ArithTerm& a, const ArithTerm& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct ArithTerm::Plus {
  ArithTerm lhs;
  ArithTerm rhs;
  bool operator==(const Plus&) const = default;
};

struct ArithTerm::Node {
  std::variant<Var, Zero, One, Plus> data;
};

template <class T>
const T* ArithTerm::get_if() const {
  return std::get_if<T>(&node_->data);
}

inline ArithTerm::ArithTerm(Var v) : node_(std::make_shared<Node>(Node{std::move(v)})) {}
inline ArithTerm::ArithTerm(Zero z) : node_(std::make_shared<Node>(Node{z})) {}
inline ArithTerm::ArithTerm(One o) : node_(std::make_shared<Node>(Node{o})) {}
inline ArithTerm::ArithTerm(Plus p) : node_(std::make_shared<Node>(Node{std::move(p)})) {}

inline bool operator==(const ArithTerm& a, const ArithTerm& b) {
  return a.node_ == b.node_ || a.node_->data == b.node_->data;
}

inline ArithTerm avar(std::string name) { return ArithTerm::Var{std::move(name)}; }
inline ArithTerm azero() { return ArithTerm::Zero{}; }
inline ArithTerm aone() { return ArithTerm::One{}; }
inline ArithTerm aplus(ArithTerm l, ArithTerm r) { return ArithTerm::Plus{std::move(l), std::move(r)}; }
inline ArithTerm succ(ArithTerm t) { return aplus(std::move(t), aone()); }

inline void collect_vars(const ArithTerm& t, std::set<std::string>& out) {
  if (const auto* v = t.get_if<ArithTerm::Var>()) {
    out.insert(v->name);
  } else if (const auto* p = t.get_if<ArithTerm::Plus>()) {
    collect_vars(p->lhs, out);
    collect_vars(p->rhs, out);
  }
}

inline std::set<std::string> free_vars(const ArithTerm& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

inline ArithTerm arith_subst(const ArithTerm& t, const std::string& x, const ArithTerm& s) {
  if (const auto* v = t.get_if<ArithTerm::Var>()) return v->name == x ? s : t;
  if (const auto* p = t.get_if<ArithTerm::Plus>()) {
    return aplus(arith_subst(p->lhs, x, s), arith_subst(p->rhs, x, s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Formulas

class Formula {
 public:
  enum class Connective { And, Or, Imp };
  enum class Relation { Eq, Geq };
  enum class Quantifier { Forall, Exists };

  struct Atom {
    Relation rel;
    ArithTerm lhs;
    ArithTerm rhs;
    bool operator==(const Atom&) const = default;
  };
  struct Binary;
  struct Quant;

  Formula(Atom a);
  Formula(Binary b);
  Formula(Quant q);

  template <class T>
  const T* get_if() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct Formula::Binary {
  Connective op;
  Formula lhs;
  Formula rhs;
  bool operator==(const Binary&) const = default;
};

struct Formula::Quant {
  Quantifier q;
  std::string binder;
  Formula body;
  bool operator==(const Quant&) const = default;
};

struct Formula::Node {
  std::variant<Atom, Binary, Quant> data;
};

template <class T>
const T* Formula::get_if() const {
  return std::get_if<T>(&node_->data);
}

inline Formula::Formula(Atom a) : node_(std::make_shared<Node>(Node{std::move(a)})) {}
inline Formula::Formula(Binary b) : node_(std::make_shared<Node>(Node{std::move(b)})) {}
inline Formula::Formula(Quant q) : node_(std::make_shared<Node>(Node{std::move(q)})) {}

inline bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.node_->data == b.node_->data;
}

inline Formula eq(ArithTerm l, ArithTerm r) {
  return Formula::Atom{Formula::Relation::Eq, std::move(l), std::move(r)};
}
inline Formula geq(ArithTerm l, ArithTerm r) {
  return Formula::Atom{Formula::Relation::Geq, std::move(l), std::move(r)};
}
inline Formula conj(Formula l, Formula r) {
  return Formula::Binary{Formula::Connective::And, std::move(l), std::move(r)};
}
inline Formula disj(Formula l, Formula r) {
  return Formula::Binary{Formula::Connective::Or, std::move(l), std::move(r)};
}
inline Formula imp(Formula l, Formula r) {
  return Formula::Binary{Formula::Connective::Imp, std::move(l), std::move(r)};
}
inline Formula forall(std::string x, Formula body) {
  return Formula::Quant{Formula::Quantifier::Forall, std::move(x), std::move(body)};
}
inline Formula exists(std::string x, Formula body) {
  return Formula::Quant{Formula::Quantifier::Exists, std::move(x), std::move(body)};
}

inline void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (const auto* a = f.get_if<Formula::Atom>()) {
    for (const auto& v : free_vars(a->lhs)) {
      if (!bound.count(v)) out.insert(v);
    }
    for (const auto& v : free_vars(a->rhs)) {
      if (!bound.count(v)) out.insert(v);
    }
  } else if (const auto* b = f.get_if<Formula::Binary>()) {
    collect_free(b->lhs, bound, out);
    collect_free(b->rhs, bound, out);
  } else {
    const auto& q = *f.get_if<Formula::Quant>();
    bool fresh = bound.insert(q.binder).second;
    collect_free(q.body, bound, out);
    if (fresh) bound.erase(q.binder);
  }
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

inline bool occurs_free(const std::string& x, const Formula& f) { return free_vars(f).count(x) > 0; }

inline bool quantifier_free(const Formula& f) {
  if (f.get_if<Formula::Atom>()) return true;
  if (const auto* b = f.get_if<Formula::Binary>()) {
    return quantifier_free(b->lhs) && quantifier_free(b->rhs);
  }
  return false;
}

/// Capture-avoiding F[x := t]; clashing binders are renamed with primes.
inline Formula formula_subst(const Formula& f, const std::string& x, const ArithTerm& t) {
  if (const auto* a = f.get_if<Formula::Atom>()) {
    return Formula::Atom{a->rel, arith_subst(a->lhs, x, t), arith_subst(a->rhs, x, t)};
  }
  if (const auto* b = f.get_if<Formula::Binary>()) {
    return Formula::Binary{b->op, formula_subst(b->lhs, x, t), formula_subst(b->rhs, x, t)};
  }
  const auto& q = *f.get_if<Formula::Quant>();
  if (q.binder == x || !occurs_free(x, q.body)) return f;
  auto tv = free_vars(t);
  if (!tv.count(q.binder)) return Formula::Quant{q.q, q.binder, formula_subst(q.body, x, t)};
  auto body_fv = free_vars(q.body);
  std::string y = q.binder;
  while (y == x || tv.count(y) || body_fv.count(y)) y += '\'';
  Formula renamed = formula_subst(q.body, q.binder, avar(y));
  return Formula::Quant{q.q, y, formula_subst(renamed, x, t)};
}

namespace detail {

inline bool arith_alpha_eq(const ArithTerm& a, const ArithTerm& b, const std::vector<std::string>& ls,
                           const std::vector<std::string>& rs) {
  if (const auto* va = a.get_if<ArithTerm::Var>()) {
    const auto* vb = b.get_if<ArithTerm::Var>();
    if (vb == nullptr) return false;
    auto depth = [](const std::vector<std::string>& scope, const std::string& n) -> long {
      for (long i = static_cast<long>(scope.size()) - 1; i >= 0; --i) {
        if (scope[static_cast<std::size_t>(i)] == n) return i;
      }
      return -1;
    };
    long da = depth(ls, va->name);
    long db = depth(rs, vb->name);
    if (da < 0 && db < 0) return va->name == vb->name;
    return da == db;
  }
  if (const auto* pa = a.get_if<ArithTerm::Plus>()) {
    const auto* pb = b.get_if<ArithTerm::Plus>();
    return pb != nullptr && arith_alpha_eq(pa->lhs, pb->lhs, ls, rs) &&
           arith_alpha_eq(pa->rhs, pb->rhs, ls, rs);
  }
  return a == b;
}

inline bool formula_alpha_eq(const Formula& a, const Formula& b, std::vector<std::string>& ls,
                             std::vector<std::string>& rs) {
  if (const auto* fa = a.get_if<Formula::Atom>()) {
    const auto* fb = b.get_if<Formula::Atom>();
    return fb != nullptr && fa->rel == fb->rel && arith_alpha_eq(fa->lhs, fb->lhs, ls, rs) &&
           arith_alpha_eq(fa->rhs, fb->rhs, ls, rs);
  }
  if (const auto* ba = a.get_if<Formula::Binary>()) {
    const auto* bb = b.get_if<Formula::Binary>();
    return bb != nullptr && ba->op == bb->op && formula_alpha_eq(ba->lhs, bb->lhs, ls, rs) &&
           formula_alpha_eq(ba->rhs, bb->rhs, ls, rs);
  }
  const auto& qa = *a.get_if<Formula::Quant>();
  const auto* qb = b.get_if<Formula::Quant>();
  if (qb == nullptr || qa.q != qb->q) return false;
  ls.push_back(qa.binder);
  rs.push_back(qb->binder);
  bool r = formula_alpha_eq(qa.body, qb->body, ls, rs);
  ls.pop_back();
  rs.pop_back();
  return r;
}

}  // namespace detail

inline bool alpha_eq(const Formula& a, const Formula& b) {
  std::vector<std::string> ls, rs;
  return detail::formula_alpha_eq(a, b, ls, rs);
}

// ---------------------------------------------------------------------------
// Semantics

using Env = std::map<std::string, Natural>;

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(const std::string& name)
      : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NotQuantifierFree : public std::runtime_error {
 public:
  NotQuantifierFree() : std::runtime_error("formula is not quantifier-free") {}
};

inline Natural eval_arith(const ArithTerm& t, const Env& env) {
  if (const auto* v = t.get_if<ArithTerm::Var>()) {
    auto it = env.find(v->name);
    if (it == env.end()) throw UnboundVariable(v->name);
    return it->second;
  }
  if (t.get_if<ArithTerm::Zero>()) return 0;
  if (t.get_if<ArithTerm::One>()) return 1;
  const auto& p = *t.get_if<ArithTerm::Plus>();
  return eval_arith(p.lhs, env) + eval_arith(p.rhs, env);
}

namespace detail {

inline bool eval_atom(const Formula::Atom& a, const Env& env) {
  Natural l = eval_arith(a.lhs, env);
  Natural r = eval_arith(a.rhs, env);
  return a.rel == Formula::Relation::Eq ? l == r : l >= r;
}

// Quantifiers range over 0..bound when `bound` is set and are rejected
// otherwise.
inline bool eval(const Formula& f, Env& env, const Natural* bound) {
  if (const auto* a = f.get_if<Formula::Atom>()) return eval_atom(*a, env);
  if (const auto* b = f.get_if<Formula::Binary>()) {
    switch (b->op) {
      case Formula::Connective::And:
        return eval(b->lhs, env, bound) && eval(b->rhs, env, bound);
      case Formula::Connective::Or:
        return eval(b->lhs, env, bound) || eval(b->rhs, env, bound);
      case Formula::Connective::Imp:
        return !eval(b->lhs, env, bound) || eval(b->rhs, env, bound);
    }
  }
  if (bound == nullptr) throw NotQuantifierFree();
  const auto& q = *f.get_if<Formula::Quant>();
  const auto it = env.find(q.binder);
  const bool had = it != env.end();
  const Natural saved = had ? it->second : 0;
  const bool universal = q.q == Formula::Quantifier::Forall;
  bool result = universal;
  for (Natural v = 0; v <= *bound; ++v) {
    env[q.binder] = v;
    if (eval(q.body, env, bound) != universal) {
      result = !universal;
      break;
    }
  }
  if (had) {
    env[q.binder] = saved;
  } else {
    env.erase(q.binder);
  }
  return result;
}

}  // namespace detail

/// Truth of a quantifier-free formula; implication is material.
inline bool eval_qf(const Formula& f, const Env& env) {
  if (!quantifier_free(f)) throw NotQuantifierFree();
  Env scratch = env;
  return detail::eval(f, scratch, nullptr);
}

/// Truth with every quantifier restricted to 0..bound. A false universal or
/// a true existential is decisive; the converse cases only approximate N.
inline bool eval_bounded(const Formula& f, const Env& env, Natural bound) {
  Env scratch = env;
  return detail::eval(f, scratch, &bound);
}

}  // namespace realizer::logic
