#pragma once

// Untyped lambda terms extended with arithmetic, pairing and control
// constants. Terms are immutable and share structure; every node caches its
// free variables and, when it is arithmetical, the number it denotes.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace realizer::lambda {

using Natural = std::uint64_t;

enum class ConstKind {
  Zero,
  One,
  Plus,
  CutMinus,
  Pair,
  Left,
  Right,
  IsZero,
  IfThenElse,
  R,
};

/// The variable standing for "no computational content". It is an ordinary
/// free variable that no binder may ever use.
inline constexpr std::string_view kEpsilon = "\xCE\xB5";  // "ε"

class Term;

namespace detail {
struct TermNode;
}

struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};

struct Const {
  ConstKind kind;
  bool operator==(const Const&) const = default;
};

class Term {
 public:
  /// Default-constructed terms are the constant 0.
  Term();

  template <class T>
  const T* get_if() const;

  bool is_var() const;
  bool is_const(ConstKind k) const;
  bool is_app() const;
  bool is_lam() const;

  /// Sorted, duplicate-free.
  const std::vector<std::string>& free_vars() const;
  bool has_free(std::string_view name) const;
  bool closed() const { return free_vars().empty(); }

  /// Value of a variable-free term built only from 0, 1 and applied +.
  std::optional<Natural> arithmetical() const;
  /// True for numeral(n) as produced by `numeral`.
  bool canonical_numeral() const;

  const detail::TermNode* node() const { return node_.get(); }

  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}

  friend bool operator==(const Term& a, const Term& b);

 private:
  std::shared_ptr<const detail::TermNode> node_;
};

struct App {
  Term fun;
  Term arg;
  bool operator==(const App&) const = default;
};

struct Lam {
  std::string binder;
  Term body;
  bool operator==(const Lam&) const = default;
};

namespace detail {

struct TermNode {
  std::variant<Var, Const, App, Lam> data;
  std::vector<std::string> free;
  std::optional<Natural> arith;
  bool canonical = false;
};

inline std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Arithmetical value of App(App(Plus, l), r), if any.
inline std::optional<Natural> plus_value(const Term& fun, const Term& arg) {
  const auto* inner = fun.get_if<App>();
  if (inner == nullptr || !inner->fun.is_const(ConstKind::Plus)) return std::nullopt;
  auto l = inner->arg.arithmetical();
  auto r = arg.arithmetical();
  if (!l || !r) return std::nullopt;
  return *l + *r;
}

}  // namespace detail

inline Term make_term(auto&& data) {
  auto node = std::make_shared<detail::TermNode>();
  using T = std::decay_t<decltype(data)>;
  if constexpr (std::is_same_v<T, Var>) {
    node->free = {data.name};
  } else if constexpr (std::is_same_v<T, Const>) {
    if (data.kind == ConstKind::Zero) {
      node->arith = 0;
      node->canonical = true;
    } else if (data.kind == ConstKind::One) {
      node->arith = 1;
    }
  } else if constexpr (std::is_same_v<T, App>) {
    node->free = detail::merge_sorted(data.fun.free_vars(), data.arg.free_vars());
    node->arith = detail::plus_value(data.fun, data.arg);
    node->canonical = node->arith.has_value() && data.arg.is_const(ConstKind::One) &&
                      data.fun.template get_if<App>()->arg.canonical_numeral();
  } else {
    static_assert(std::is_same_v<T, Lam>);
    node->free = data.body.free_vars();
    auto it = std::lower_bound(node->free.begin(), node->free.end(), data.binder);
    if (it != node->free.end() && *it == data.binder) node->free.erase(it);
  }
  node->data = std::forward<decltype(data)>(data);
  return Term(std::move(node));
}

inline Term var(std::string name) { return make_term(Var{std::move(name)}); }
inline Term cnst(ConstKind k) { return make_term(Const{k}); }
inline Term app(Term f, Term a) { return make_term(App{std::move(f), std::move(a)}); }
inline Term lam(std::string x, Term body) { return make_term(Lam{std::move(x), std::move(body)}); }

inline Term eps() { return var(std::string(kEpsilon)); }
inline Term zero() { return cnst(ConstKind::Zero); }
inline Term one() { return cnst(ConstKind::One); }
inline Term app(Term f, Term a, Term b) { return app(app(std::move(f), std::move(a)), std::move(b)); }
inline Term app(Term f, Term a, Term b, Term c) {
  return app(app(std::move(f), std::move(a), std::move(b)), std::move(c));
}
inline Term plus(Term a, Term b) { return app(cnst(ConstKind::Plus), std::move(a), std::move(b)); }
inline Term cut_minus(Term a, Term b) {
  return app(cnst(ConstKind::CutMinus), std::move(a), std::move(b));
}
inline Term pair(Term a, Term b) { return app(cnst(ConstKind::Pair), std::move(a), std::move(b)); }
inline Term left(Term p) { return app(cnst(ConstKind::Left), std::move(p)); }
inline Term right(Term p) { return app(cnst(ConstKind::Right), std::move(p)); }
inline Term is_zero(Term t) { return app(cnst(ConstKind::IsZero), std::move(t)); }
inline Term ite(Term c, Term t, Term e) {
  return app(cnst(ConstKind::IfThenElse), std::move(c), std::move(t), std::move(e));
}
inline Term rec(Term base, Term step, Term n) {
  return app(cnst(ConstKind::R), std::move(base), std::move(step), std::move(n));
}

/// numeral(0) = 0, numeral(n+1) = numeral(n) + 1.
inline Term numeral(Natural n) {
  Term t = zero();
  Term o = one();
  for (Natural i = 0; i < n; ++i) t = plus(std::move(t), o);
  return t;
}

inline Term::Term() : Term(zero()) {}

template <class T>
const T* Term::get_if() const {
  return std::get_if<T>(&node_->data);
}

inline bool Term::is_var() const { return get_if<Var>() != nullptr; }
inline bool Term::is_app() const { return get_if<App>() != nullptr; }
inline bool Term::is_lam() const { return get_if<Lam>() != nullptr; }
inline bool Term::is_const(ConstKind k) const {
  const auto* c = get_if<Const>();
  return c != nullptr && c->kind == k;
}
inline const std::vector<std::string>& Term::free_vars() const { return node_->free; }
inline bool Term::has_free(std::string_view name) const {
  const auto& fv = node_->free;
  return std::binary_search(fv.begin(), fv.end(), name, std::less<>{});
}
inline std::optional<Natural> Term::arithmetical() const { return node_->arith; }
inline bool Term::canonical_numeral() const { return node_->canonical; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->free != b.node_->free || a.node_->arith != b.node_->arith) return false;
  return a.node_->data == b.node_->data;
}

inline std::set<std::string> free_vars(const Term& t) {
  return {t.free_vars().begin(), t.free_vars().end()};
}

inline std::optional<Natural> denote_arithmetical(const Term& t) { return t.arithmetical(); }

/// Appends primes to `base` until it avoids every name in `taken`.
template <class Pred>
std::string fresh_name(std::string base, Pred taken) {
  while (taken(base)) base += '\'';
  return base;
}

namespace detail {

inline Term substitute_impl(const Term& t, const std::string& x, const Term& s) {
  if (!t.has_free(x)) return t;
  if (t.is_var()) return s;
  if (const auto* a = t.get_if<App>()) {
    return app(substitute_impl(a->fun, x, s), substitute_impl(a->arg, x, s));
  }
  const auto& l = *t.get_if<Lam>();
  // x is free in the body and differs from the binder here.
  if (!s.has_free(l.binder)) return lam(l.binder, substitute_impl(l.body, x, s));
  std::string y = fresh_name(l.binder, [&](const std::string& n) {
    return n == x || s.has_free(n) || l.body.has_free(n);
  });
  Term body = substitute_impl(l.body, l.binder, var(y));
  return lam(y, substitute_impl(body, x, s));
}

}  // namespace detail

/// Capture-avoiding t[x := s]. Binders that would capture a free variable of
/// s are renamed by appending primes.
inline Term substitute(const Term& t, const std::string& x, const Term& s) {
  return detail::substitute_impl(t, x, s);
}

namespace detail {

inline bool alpha_eq_impl(const Term& a, const Term& b, std::vector<std::string>& left_scope,
                          std::vector<std::string>& right_scope) {
  if (a.node() == b.node() && left_scope == right_scope) return true;
  if (const auto* va = a.get_if<Var>()) {
    const auto* vb = b.get_if<Var>();
    if (vb == nullptr) return false;
    // Innermost binder wins; both sides must resolve to the same depth.
    auto find = [](const std::vector<std::string>& scope, const std::string& n) -> std::ptrdiff_t {
      for (auto i = static_cast<std::ptrdiff_t>(scope.size()) - 1; i >= 0; --i) {
        if (scope[static_cast<std::size_t>(i)] == n) return i;
      }
      return -1;
    };
    auto ia = find(left_scope, va->name);
    auto ib = find(right_scope, vb->name);
    if (ia < 0 && ib < 0) return va->name == vb->name;
    return ia == ib;
  }
  if (const auto* ca = a.get_if<Const>()) {
    const auto* cb = b.get_if<Const>();
    return cb != nullptr && ca->kind == cb->kind;
  }
  if (const auto* pa = a.get_if<App>()) {
    const auto* pb = b.get_if<App>();
    return pb != nullptr && alpha_eq_impl(pa->fun, pb->fun, left_scope, right_scope) &&
           alpha_eq_impl(pa->arg, pb->arg, left_scope, right_scope);
  }
  const auto& la = *a.get_if<Lam>();
  const auto* lb = b.get_if<Lam>();
  if (lb == nullptr) return false;
  left_scope.push_back(la.binder);
  right_scope.push_back(lb->binder);
  bool eq = alpha_eq_impl(la.body, lb->body, left_scope, right_scope);
  left_scope.pop_back();
  right_scope.pop_back();
  return eq;
}

}  // namespace detail

inline bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::string> ls, rs;
  return detail::alpha_eq_impl(a, b, ls, rs);
}

}  // namespace realizer::lambda
