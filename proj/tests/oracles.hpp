// Brute-force reference implementations used by the tests and the acceptance
// runner. Nothing here calls the library's own algorithms: relations are plain
// boolean matrices and every search is exhaustive.
#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/formula.hpp"
#include "ua/io.hpp"

#ifndef UA_DATA_DIR
#error "UA_DATA_DIR must point at the data directory"
#endif

namespace oracle {

using ua::Element;
using ua::FiniteAlgebra;

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(UA_DATA_DIR) / name;
}

inline FiniteAlgebra load(const std::string& stem) { return ua::io::load_algebra(data_path(stem + ".alg")); }

inline const std::vector<std::string>& ring_names() {
  static const std::vector<std::string> names{"z2", "z3", "z4", "z6"};
  return names;
}

inline const std::vector<std::string>& lattice_names() {
  static const std::vector<std::string> names{"l2", "l2x2", "m3", "n5", "l2x2x2"};
  return names;
}

inline std::vector<std::string> corpus_names() {
  auto out = ring_names();
  out.insert(out.end(), lattice_names().begin(), lattice_names().end());
  return out;
}

/// Row-major n×n relation.
struct Rel {
  std::size_t n = 0;
  std::vector<char> m;

  explicit Rel(std::size_t size = 0) : n(size), m(size * size, 0) {}
  bool operator()(std::size_t x, std::size_t y) const { return m[x * n + y]; }
  void set(std::size_t x, std::size_t y) { m[x * n + y] = 1; }
  friend bool operator==(const Rel&, const Rel&) = default;
  friend bool operator<(const Rel& a, const Rel& b) { return a.m < b.m; }
};

inline Rel identity(std::size_t n) {
  Rel r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

inline Rel full(std::size_t n) {
  Rel r(n);
  std::fill(r.m.begin(), r.m.end(), 1);
  return r;
}

inline Rel intersect(const Rel& a, const Rel& b) {
  Rel r(a.n);
  for (std::size_t i = 0; i < r.m.size(); ++i) r.m[i] = a.m[i] && b.m[i];
  return r;
}

inline Rel compose(const Rel& a, const Rel& b) {
  Rel r(a.n);
  for (std::size_t x = 0; x < a.n; ++x)
    for (std::size_t y = 0; y < a.n; ++y)
      for (std::size_t z = 0; z < a.n; ++z)
        if (a(x, y) && b(y, z)) r.set(x, z);
  return r;
}

inline bool subset(const Rel& a, const Rel& b) {
  for (std::size_t i = 0; i < a.m.size(); ++i)
    if (a.m[i] && !b.m[i]) return false;
  return true;
}

/// Every set partition as a relation, by assigning each element to an
/// existing block or a new one.
inline std::vector<Rel> equivalences(std::size_t n) {
  std::vector<Rel> out;
  std::vector<std::size_t> label(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      Rel r(n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (label[x] == label[y]) r.set(x, y);
      out.push_back(std::move(r));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return {Rel(0)};
  label[0] = 0;
  rec(rec, 1, 1);
  return out;
}

/// Compatibility by scanning all pairs of argument tuples.
inline bool compatible(const FiniteAlgebra& a, const Rel& r) {
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().symbols().size(); ++s) {
    const std::size_t k = a.signature().symbol(s).arity;
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= n;
    std::vector<Element> xs(k), ys(k);
    for (std::size_t p = 0; p < count; ++p)
      for (std::size_t q = 0; q < count; ++q) {
        std::size_t pp = p, qq = q;
        bool related = true;
        for (std::size_t i = k; i-- > 0;) {
          xs[i] = static_cast<Element>(pp % n);
          ys[i] = static_cast<Element>(qq % n);
          pp /= n;
          qq /= n;
          related = related && r(xs[i], ys[i]);
        }
        if (related && !r(a.apply(s, xs), a.apply(s, ys))) return false;
      }
  }
  return true;
}

inline std::vector<Rel> congruences(const FiniteAlgebra& a) {
  std::vector<Rel> out;
  for (auto& r : equivalences(a.size()))
    if (compatible(a, r)) out.push_back(std::move(r));
  std::sort(out.begin(), out.end());
  return out;
}

/// Least congruence containing the pairs: the intersection of all that do.
inline Rel generated(const std::vector<Rel>& cons, const std::vector<std::pair<Element, Element>>& pairs) {
  Rel acc = full(cons.front().n);
  for (const auto& c : cons) {
    bool contains = true;
    for (auto [x, y] : pairs) contains = contains && c(x, y);
    if (contains) acc = intersect(acc, c);
  }
  return acc;
}

/// Least congruence containing both.
inline Rel join(const std::vector<Rel>& cons, const Rel& a, const Rel& b) {
  Rel acc = full(a.n);
  for (const auto& c : cons)
    if (subset(a, c) && subset(b, c)) acc = intersect(acc, c);
  return acc;
}

template <class P>
Rel rel_of(const P& partition_like, std::size_t n) {
  Rel r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (partition_like.related(static_cast<Element>(x), static_cast<Element>(y))) r.set(x, y);
  return r;
}

struct Pair {
  Rel theta;
  Rel delta;
};

inline std::vector<Pair> factor_pairs(const std::vector<Rel>& cons) {
  const std::size_t n = cons.front().n;
  std::vector<Pair> out;
  for (const auto& t : cons)
    for (const auto& d : cons)
      if (intersect(t, d) == identity(n) && compose(t, d) == full(n)) out.push_back({t, d});
  return out;
}

inline bool tuple_related(const Rel& r, const ua::Tuple& a, const ua::Tuple& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!r(a[i], b[i])) return false;
  return true;
}

struct Central {
  ua::Tuple tuple;
  Rel theta0;
  Rel theta1;
};

/// Tuples e with e ≡ 0 (θ) and e ≡ 1 (δ) for a factor pair (θ, δ), one entry
/// per pair, sorted by tuple.
inline std::vector<Central> centrals(const FiniteAlgebra& a, const std::vector<Rel>& cons) {
  std::vector<Central> out;
  const std::size_t k = a.tuple_length();
  for (const auto& p : factor_pairs(cons))
    ua::for_each_tuple(a.size(), k, [&](std::span<const Element> t) {
      ua::Tuple e(t.begin(), t.end());
      if (tuple_related(p.theta, e, a.zero()) && tuple_related(p.delta, e, a.one()))
        out.push_back({e, p.theta, p.delta});
    });
  std::sort(out.begin(), out.end(), [](const Central& x, const Central& y) { return x.tuple < y.tuple; });
  return out;
}

/// Nontrivial with exactly the two trivial factor pairs.
inline bool connected(const FiniteAlgebra& a) {
  if (a.size() < 2 || a.zero() == a.one()) return false;
  return factor_pairs(congruences(a)).size() == 2;
}

inline bool preserves(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<Element>& map) {
  for (std::size_t s = 0; s < a.signature().symbols().size(); ++s) {
    const std::size_t k = a.signature().symbol(s).arity;
    bool ok = true;
    ua::for_each_tuple(a.size(), k, [&](std::span<const Element> xs) {
      std::vector<Element> ys;
      for (Element x : xs) ys.push_back(map[x]);
      if (map[a.apply(s, xs)] != b.apply(s, ys)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Isomorphism by scanning every permutation.
inline std::optional<std::vector<Element>> isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.size() != b.size() || !a.same_signature(b)) return std::nullopt;
  std::vector<Element> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (preserves(a, b, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formula semantics by direct recursion over the syntax tree.

inline Element term_value(const FiniteAlgebra& a, const ua::Term& t, const std::map<std::string, Element>& env) {
  if (t.is_variable()) return env.at(t.name);
  std::vector<Element> args;
  for (const auto& s : t.args) args.push_back(term_value(a, s, env));
  return a.apply(static_cast<std::size_t>(t.symbol), args);
}

inline bool holds(const FiniteAlgebra& a, const ua::Formula& f, std::map<std::string, Element> env) {
  using K = ua::Formula::Kind;
  switch (f.kind) {
    case K::Equation:
      return term_value(a, f.lhs, env) == term_value(a, f.rhs, env);
    case K::And:
      for (const auto& c : f.children)
        if (!holds(a, c, env)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children)
        if (holds(a, c, env)) return true;
      return false;
    case K::Not:
      return !holds(a, f.children[0], env);
    case K::Implies:
      return !holds(a, f.children[0], env) || holds(a, f.children[1], env);
    case K::Exists:
    case K::Forall: {
      const bool want = f.kind == K::Exists;
      bool result = !want;
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (result == want) return;
        if (i == f.variables.size()) {
          if (holds(a, f.children[0], env) == want) result = want;
          return;
        }
        for (Element x = 0; x < a.size() && result != want; ++x) {
          env[f.variables[i]] = x;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      return result;
    }
  }
  return false;
}

}  // namespace oracle
