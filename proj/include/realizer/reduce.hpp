#pragma once

// Reduction rules and normal-order evaluation.
//
//   (\x.t) s          -> t[x := s]
//   left (s, t)       -> s
//   right (s, t)      -> t
//   isZero 0          -> 0
//   isZero (t + 1)    -> 1
//   ite 0 t s         -> t
//   ite 1 t s         -> s
//   R b s 0           -> b
//   R b s (t + 1)     -> s t (R b s t)
//   t -. s            -> numeral(a - b) if t, s denote a > b
//   t -. s            -> 0              if t, s denote a <= b
//
// Scrutinees of isZero, ite and R that are closed arithmetical terms but not
// in canonical form are first rewritten to numeral(n); that rewrite counts as
// one step. The constant 1 is accepted wherever numeral(1) = 0 + 1 is.
//
// `step` contracts the leftmost-outermost redex of a term tree. `reduce` and
// `normalize` follow the same order on a graph in which the argument of a
// beta-redex is shared between its copies, so a duplicated argument is
// evaluated once. Both reach the same normal form; the graph needs at most as
// many steps.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "realizer/term.hpp"

namespace realizer::lambda {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// Normalization ran out of fuel before reaching a normal form.
class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted(Term partial, std::uint64_t steps)
      : std::runtime_error("fuel exhausted after " + std::to_string(steps) + " steps"),
        partial_(std::move(partial)),
        steps_(steps) {}

  const Term& partial() const { return partial_; }
  std::uint64_t steps() const { return steps_; }

 private:
  Term partial_;
  std::uint64_t steps_;
};

struct Reduction {
  Term term;
  std::uint64_t steps = 0;
  /// False when fuel ran out; `term` is then the last reduct.
  bool normal = false;
};

namespace detail {

// Head and arguments of an application spine, outermost argument last.
struct Spine {
  Term head;
  std::vector<Term> args;
};

inline Spine spine_of(const Term& t) {
  Spine s;
  Term cur = t;
  while (const auto* a = cur.get_if<App>()) {
    s.args.push_back(a->arg);
    cur = a->fun;
  }
  s.head = cur;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

// Is t literally "u + 1"? Returns u.
inline std::optional<Term> successor_of(const Term& t) {
  const auto* outer = t.get_if<App>();
  if (outer == nullptr || !outer->arg.is_const(ConstKind::One)) return std::nullopt;
  const auto* inner = outer->fun.get_if<App>();
  if (inner == nullptr || !inner->fun.is_const(ConstKind::Plus)) return std::nullopt;
  return inner->arg;
}

// Closed arithmetical term that is neither canonical nor the constant 1.
inline bool needs_canonicalizing(const Term& t) {
  return t.arithmetical().has_value() && !t.canonical_numeral() && !t.is_const(ConstKind::One);
}

inline std::optional<std::pair<Term, Term>> as_pair(const Term& t) {
  Spine s = spine_of(t);
  if (s.args.size() != 2 || !s.head.is_const(ConstKind::Pair)) return std::nullopt;
  return std::pair{s.args[0], s.args[1]};
}

// Contracts t itself if it is a redex.
inline std::optional<Term> contract(const Term& t) {
  const auto* a = t.get_if<App>();
  if (a == nullptr) return std::nullopt;
  if (const auto* l = a->fun.get_if<Lam>()) return substitute(l->body, l->binder, a->arg);

  Spine s = spine_of(t);
  const auto* c = s.head.get_if<Const>();
  if (c == nullptr) return std::nullopt;
  const auto& args = s.args;
  switch (c->kind) {
    case ConstKind::Left:
    case ConstKind::Right: {
      if (args.size() != 1) return std::nullopt;
      auto p = as_pair(args[0]);
      if (!p) return std::nullopt;
      return c->kind == ConstKind::Left ? p->first : p->second;
    }
    case ConstKind::IsZero: {
      if (args.size() != 1) return std::nullopt;
      const Term& x = args[0];
      if (x.is_const(ConstKind::Zero)) return zero();
      if (successor_of(x) || x.is_const(ConstKind::One)) return one();
      if (needs_canonicalizing(x)) return is_zero(numeral(*x.arithmetical()));
      return std::nullopt;
    }
    case ConstKind::IfThenElse: {
      if (args.size() != 3) return std::nullopt;
      const Term& cond = args[0];
      if (cond.is_const(ConstKind::Zero)) return args[1];
      if (cond.is_const(ConstKind::One) || (cond.canonical_numeral() && cond.arithmetical() == 1)) {
        return args[2];
      }
      if (needs_canonicalizing(cond)) return ite(numeral(*cond.arithmetical()), args[1], args[2]);
      return std::nullopt;
    }
    case ConstKind::R: {
      if (args.size() != 3) return std::nullopt;
      const Term& n = args[2];
      if (n.is_const(ConstKind::Zero)) return args[0];
      if (auto pred = successor_of(n)) {
        return app(args[1], *pred, rec(args[0], args[1], *pred));
      }
      if (n.is_const(ConstKind::One)) return app(args[1], zero(), rec(args[0], args[1], zero()));
      if (needs_canonicalizing(n)) return rec(args[0], args[1], numeral(*n.arithmetical()));
      return std::nullopt;
    }
    case ConstKind::CutMinus: {
      if (args.size() != 2) return std::nullopt;
      auto x = args[0].arithmetical();
      auto y = args[1].arithmetical();
      if (!x || !y) return std::nullopt;
      return numeral(*x > *y ? *x - *y : 0);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace detail

/// One leftmost-outermost reduction step, or nullopt if t has no redex.
inline std::optional<Term> step(const Term& t) {
  // Arithmetical terms contain no redexes.
  if (t.arithmetical()) return std::nullopt;
  if (auto r = detail::contract(t)) return r;
  if (const auto* a = t.get_if<App>()) {
    if (auto f = step(a->fun)) return app(*f, a->arg);
    if (auto x = step(a->arg)) return app(a->fun, *x);
    return std::nullopt;
  }
  if (const auto* l = t.get_if<Lam>()) {
    if (auto b = step(l->body)) return lam(l->binder, *b);
  }
  return std::nullopt;
}

namespace detail {

// Mutable term graph used by `reduce`. Variables are identified by binder
// ids; every copied binder gets a fresh id so substitution never captures.
class Graph {
 public:
  using Index = std::uint32_t;

  Index import(const Term& t) {
    std::vector<std::pair<std::string, std::uint32_t>> scope;
    return import_rec(t, scope);
  }

  /// Finds the next redex in normal order, marking redex-free nodes on the way.
  std::optional<Index> find_redex(Index n) {
    n = resolve(n);
    if (nodes_[n].normal) return std::nullopt;
    if (is_redex(n)) return n;
    const Kind kind = nodes_[n].kind;
    const Index a = nodes_[n].a;
    const Index b = nodes_[n].b;
    if (kind == Kind::App) {
      if (auto r = find_redex(a)) return r;
      if (auto r = find_redex(b)) return r;
    } else if (kind == Kind::Lam) {
      if (auto r = find_redex(b)) return r;
    }
    nodes_[n].normal = true;
    return std::nullopt;
  }

  void contract(Index n);

  Term readback(Index root) {
    std::vector<std::string> taken;
    collect_free_names(root, taken);
    std::unordered_map<std::uint32_t, std::string> names;
    std::unordered_map<Index, Term> closed;
    return readback_rec(root, names, taken, closed);
  }

 private:
  enum class Kind : std::uint8_t { Var, Const, App, Lam, Ind };

  struct Node {
    Kind kind = Kind::Const;
    ConstKind c = ConstKind::Zero;
    // App: fun, arg. Lam: binder id, body. Var: id. Ind: target.
    Index a = 0;
    Index b = 0;
    // Superset of the free variable ids; reduction only ever shrinks it.
    std::vector<std::uint32_t> fv;
    bool normal = false;
  };

  struct VarInfo {
    std::string name;
    bool free;
  };

  std::vector<Node> nodes_;
  std::vector<VarInfo> vars_;
  std::unordered_map<std::string, std::uint32_t> free_ids_;
  std::vector<Index> numerals_;
  std::optional<Index> const_nodes_[10];

  Index push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<Index>(nodes_.size() - 1);
  }

  Index resolve(Index n) {
    Index root = n;
    while (nodes_[root].kind == Kind::Ind) root = nodes_[root].a;
    while (nodes_[n].kind == Kind::Ind) {
      Index next = nodes_[n].a;
      nodes_[n].a = root;
      n = next;
    }
    return root;
  }

  Index mk_const(ConstKind k) {
    auto& slot = const_nodes_[static_cast<int>(k)];
    if (!slot) {
      Node n;
      n.kind = Kind::Const;
      n.c = k;
      n.normal = true;
      slot = push(std::move(n));
    }
    return *slot;
  }

  Index mk_var(std::uint32_t id) {
    Node n;
    n.kind = Kind::Var;
    n.a = id;
    n.fv = {id};
    n.normal = true;
    return push(std::move(n));
  }

  Index mk_app(Index f, Index x) {
    Node n;
    n.kind = Kind::App;
    n.a = f;
    n.b = x;
    const auto& ff = nodes_[f].fv;
    const auto& xf = nodes_[x].fv;
    std::set_union(ff.begin(), ff.end(), xf.begin(), xf.end(), std::back_inserter(n.fv));
    return push(std::move(n));
  }

  Index mk_lam(std::uint32_t id, Index body) {
    Node n;
    n.kind = Kind::Lam;
    n.a = id;
    n.b = body;
    n.fv = nodes_[body].fv;
    auto it = std::lower_bound(n.fv.begin(), n.fv.end(), id);
    if (it != n.fv.end() && *it == id) n.fv.erase(it);
    return push(std::move(n));
  }

  std::uint32_t new_var(std::string name, bool free) {
    vars_.push_back({std::move(name), free});
    return static_cast<std::uint32_t>(vars_.size() - 1);
  }

  Index numeral_node(Natural v) {
    if (numerals_.empty()) numerals_.push_back(mk_const(ConstKind::Zero));
    while (numerals_.size() <= v) {
      Index prev = numerals_.back();
      Index n = mk_app(mk_app(mk_const(ConstKind::Plus), prev), mk_const(ConstKind::One));
      nodes_[n].normal = true;
      nodes_[nodes_[n].a].normal = true;
      numerals_.push_back(n);
    }
    return numerals_[v];
  }

  Index import_rec(const Term& t, std::vector<std::pair<std::string, std::uint32_t>>& scope) {
    if (const auto* v = t.get_if<Var>()) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == v->name) return mk_var(it->second);
      }
      auto [it, inserted] = free_ids_.try_emplace(v->name, 0);
      if (inserted) it->second = new_var(v->name, true);
      return mk_var(it->second);
    }
    if (const auto* c = t.get_if<Const>()) return mk_const(c->kind);
    if (auto value = t.arithmetical(); value && t.canonical_numeral()) return numeral_node(*value);
    if (const auto* a = t.get_if<App>()) {
      Index f = import_rec(a->fun, scope);
      Index x = import_rec(a->arg, scope);
      return mk_app(f, x);
    }
    const auto& l = *t.get_if<Lam>();
    std::uint32_t id = new_var(l.binder, false);
    scope.emplace_back(l.binder, id);
    Index body = import_rec(l.body, scope);
    scope.pop_back();
    return mk_lam(id, body);
  }

  // Arithmetical value of the subgraph at n, if it is one.
  std::optional<Natural> arith(Index n) {
    n = resolve(n);
    const Node& node = nodes_[n];
    if (node.kind == Kind::Const) {
      if (node.c == ConstKind::Zero) return 0;
      if (node.c == ConstKind::One) return 1;
      return std::nullopt;
    }
    if (node.kind != Kind::App || !node.fv.empty()) return std::nullopt;
    Index f = resolve(node.a);
    if (nodes_[f].kind != Kind::App) return std::nullopt;
    Index plus = resolve(nodes_[f].a);
    if (nodes_[plus].kind != Kind::Const || nodes_[plus].c != ConstKind::Plus) return std::nullopt;
    Index lhs = nodes_[f].b;
    Index rhs = node.b;
    auto l = arith(lhs);
    if (!l) return std::nullopt;
    auto r = arith(rhs);
    if (!r) return std::nullopt;
    return *l + *r;
  }

  bool is_const(Index n, ConstKind k) {
    n = resolve(n);
    return nodes_[n].kind == Kind::Const && nodes_[n].c == k;
  }

  std::optional<Index> successor_of(Index n) {
    n = resolve(n);
    if (nodes_[n].kind != Kind::App || !is_const(nodes_[n].b, ConstKind::One)) return std::nullopt;
    Index f = resolve(nodes_[n].a);
    if (nodes_[f].kind != Kind::App || !is_const(nodes_[f].a, ConstKind::Plus)) return std::nullopt;
    return nodes_[f].b;
  }

  bool canonical(Index n) {
    n = resolve(n);
    if (is_const(n, ConstKind::Zero)) return true;
    auto pred = successor_of(n);
    return pred && canonical(*pred);
  }

  bool needs_canonicalizing(Index n) {
    return arith(n).has_value() && !canonical(n) && !is_const(n, ConstKind::One);
  }

  struct GSpine {
    Index head;
    std::vector<Index> args;
  };

  GSpine spine(Index n) {
    GSpine s;
    n = resolve(n);
    while (nodes_[n].kind == Kind::App) {
      s.args.push_back(nodes_[n].b);
      n = resolve(nodes_[n].a);
    }
    s.head = n;
    std::reverse(s.args.begin(), s.args.end());
    return s;
  }

  std::optional<std::pair<Index, Index>> as_pair(Index n) {
    GSpine s = spine(n);
    if (s.args.size() != 2 || !is_const(s.head, ConstKind::Pair)) return std::nullopt;
    return std::pair{s.args[0], s.args[1]};
  }

  bool is_redex(Index n) {
    const Node& node = nodes_[n];
    if (node.kind != Kind::App) return false;
    if (nodes_[resolve(node.a)].kind == Kind::Lam) return true;
    GSpine s = spine(n);
    const Node& head = nodes_[s.head];
    if (head.kind != Kind::Const) return false;
    const auto& args = s.args;
    switch (head.c) {
      case ConstKind::Left:
      case ConstKind::Right:
        return args.size() == 1 && as_pair(args[0]).has_value();
      case ConstKind::IsZero:
        return args.size() == 1 &&
               (is_const(args[0], ConstKind::Zero) || is_const(args[0], ConstKind::One) ||
                successor_of(args[0]) || needs_canonicalizing(args[0]));
      case ConstKind::IfThenElse:
        return args.size() == 3 &&
               (is_const(args[0], ConstKind::Zero) || is_const(args[0], ConstKind::One) ||
                (canonical(args[0]) && arith(args[0]) == 1) || needs_canonicalizing(args[0]));
      case ConstKind::R:
        return args.size() == 3 &&
               (is_const(args[2], ConstKind::Zero) || is_const(args[2], ConstKind::One) ||
                successor_of(args[2]) || needs_canonicalizing(args[2]));
      case ConstKind::CutMinus:
        return args.size() == 2 && arith(args[0]) && arith(args[1]);
      default:
        return false;
    }
  }

  void overwrite(Index n, Index target) {
    target = resolve(target);
    if (target == n) return;
    nodes_[n].kind = Kind::Ind;
    nodes_[n].a = target;
  }

  // Copies the parts of n mentioning a key of `subst`, sharing the rest.
  Index instantiate(Index n, std::unordered_map<std::uint32_t, Index>& subst,
                    std::unordered_map<Index, Index>& memo) {
    n = resolve(n);
    bool touched = false;
    for (auto id : nodes_[n].fv) {
      if (subst.count(id)) {
        touched = true;
        break;
      }
    }
    if (!touched) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Index out;
    switch (nodes_[n].kind) {
      case Kind::Var:
        out = subst.at(nodes_[n].a);
        break;
      case Kind::App: {
        Index f = instantiate(nodes_[n].a, subst, memo);
        Index x = instantiate(nodes_[n].b, subst, memo);
        out = mk_app(f, x);
        break;
      }
      case Kind::Lam: {
        std::uint32_t old_id = nodes_[n].a;
        std::uint32_t id = new_var(vars_[old_id].name, false);
        subst[old_id] = mk_var(id);
        // Entries memoized under the outer substitution stay valid: they
        // never mention old_id.
        std::unordered_map<Index, Index> inner;
        Index body = instantiate(nodes_[n].b, subst, inner);
        subst.erase(old_id);
        out = mk_lam(id, body);
        break;
      }
      default:
        out = n;
    }
    memo.emplace(n, out);
    return out;
  }

  void collect_free_names(Index root, std::vector<std::string>& out) {
    for (auto id : nodes_[resolve(root)].fv) {
      if (vars_[id].free) out.push_back(vars_[id].name);
    }
  }

  Term readback_rec(Index n, std::unordered_map<std::uint32_t, std::string>& names,
                    std::vector<std::string>& taken, std::unordered_map<Index, Term>& closed) {
    n = resolve(n);
    const bool is_closed = nodes_[n].fv.empty();
    if (is_closed) {
      if (auto it = closed.find(n); it != closed.end()) return it->second;
    }
    Term out;
    const Node node = nodes_[n];
    switch (node.kind) {
      case Kind::Var: {
        auto it = names.find(node.a);
        out = var(it != names.end() ? it->second : vars_[node.a].name);
        break;
      }
      case Kind::Const:
        out = cnst(node.c);
        break;
      case Kind::App: {
        Term f = readback_rec(node.a, names, taken, closed);
        Term x = readback_rec(node.b, names, taken, closed);
        out = app(std::move(f), std::move(x));
        break;
      }
      case Kind::Lam: {
        // A binder name differs from every enclosing binder and free name.
        std::string name = fresh_name(vars_[node.a].name, [&](const std::string& s) {
          return std::find(taken.begin(), taken.end(), s) != taken.end();
        });
        names[node.a] = name;
        taken.push_back(name);
        Term body = readback_rec(node.b, names, taken, closed);
        taken.pop_back();
        names.erase(node.a);
        out = lam(name, std::move(body));
        break;
      }
      case Kind::Ind:
        break;
    }
    if (is_closed) closed.emplace(n, out);
    return out;
  }
};

inline void Graph::contract(Index n) {
  const Node node = nodes_[n];
  Index fun = resolve(node.a);
  if (nodes_[fun].kind == Kind::Lam) {
    std::unordered_map<std::uint32_t, Index> subst{{nodes_[fun].a, node.b}};
    std::unordered_map<Index, Index> memo;
    Index body = instantiate(nodes_[fun].b, subst, memo);
    overwrite(n, body);
    return;
  }
  GSpine s = spine(n);
  const auto& args = s.args;
  auto canonicalize = [&](Index arg) { overwrite(resolve(arg), numeral_node(*arith(arg))); };
  switch (nodes_[s.head].c) {
    case ConstKind::Left:
      overwrite(n, as_pair(args[0])->first);
      return;
    case ConstKind::Right:
      overwrite(n, as_pair(args[0])->second);
      return;
    case ConstKind::IsZero:
      if (is_const(args[0], ConstKind::Zero)) {
        overwrite(n, mk_const(ConstKind::Zero));
      } else if (is_const(args[0], ConstKind::One) || successor_of(args[0])) {
        overwrite(n, mk_const(ConstKind::One));
      } else {
        canonicalize(args[0]);
      }
      return;
    case ConstKind::IfThenElse: {
      if (is_const(args[0], ConstKind::Zero)) {
        overwrite(n, args[1]);
      } else if (is_const(args[0], ConstKind::One) ||
                 (canonical(args[0]) && arith(args[0]) == 1)) {
        overwrite(n, args[2]);
      } else {
        canonicalize(args[0]);
      }
      return;
    }
    case ConstKind::R: {
      Index base = args[0], stepf = args[1], counter = args[2];
      std::optional<Index> pred;
      if (is_const(counter, ConstKind::Zero)) {
        overwrite(n, base);
        return;
      }
      if (is_const(counter, ConstKind::One)) {
        pred = mk_const(ConstKind::Zero);
      } else {
        pred = successor_of(counter);
      }
      if (!pred) {
        canonicalize(counter);
        return;
      }
      Index recur = mk_app(mk_app(mk_app(mk_const(ConstKind::R), base), stepf), *pred);
      overwrite(n, mk_app(mk_app(stepf, *pred), recur));
      return;
    }
    case ConstKind::CutMinus: {
      Natural x = *arith(args[0]);
      Natural y = *arith(args[1]);
      overwrite(n, numeral_node(x > y ? x - y : 0));
      return;
    }
    default:
      return;
  }
}

}  // namespace detail

/// Normalizes t in normal order within `fuel` steps. Never throws.
inline Reduction reduce(const Term& t, std::uint64_t fuel = kDefaultFuel) {
  detail::Graph g;
  auto root = g.import(t);
  Reduction out;
  for (;;) {
    auto redex = g.find_redex(root);
    if (!redex) {
      out.normal = true;
      break;
    }
    if (out.steps >= fuel) break;
    g.contract(*redex);
    ++out.steps;
  }
  out.term = g.readback(root);
  return out;
}

/// Normal form of t; throws FuelExhausted.
inline Term normalize(const Term& t, std::uint64_t fuel = kDefaultFuel) {
  Reduction r = reduce(t, fuel);
  if (!r.normal) throw FuelExhausted(r.term, r.steps);
  return r.term;
}

/// Number of steps normalization takes; throws FuelExhausted.
inline std::uint64_t step_count(const Term& t, std::uint64_t fuel = kDefaultFuel) {
  Reduction r = reduce(t, fuel);
  if (!r.normal) throw FuelExhausted(r.term, r.steps);
  return r.steps;
}

/// Iterates `step` on the term tree without sharing. Used to cross-check
/// `reduce`; exponentially slower on terms that duplicate their arguments.
inline Reduction reduce_unshared(const Term& t, std::uint64_t fuel = kDefaultFuel) {
  Reduction out{t, 0, false};
  for (;;) {
    auto next = step(out.term);
    if (!next) {
      out.normal = true;
      return out;
    }
    if (out.steps >= fuel) return out;
    out.term = std::move(*next);
    ++out.steps;
  }
}

}  // namespace realizer::lambda
