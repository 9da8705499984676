#include "ua/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ua {

Congruence::Congruence(FiniteAlgebra a, Partition p) : algebra_(std::move(a)), partition_(std::move(p)) {
  if (partition_.size() != algebra_.size())
    throw PreconditionError("partition size does not match algebra");
  if (auto bad = compatibility_violation(algebra_, partition_))
    throw PreconditionError("partition " + partition_.to_string() + " is not compatible with '" +
                            algebra_.signature().symbol(bad->symbol).name + "'");
}

Congruence make_congruence_unchecked(FiniteAlgebra a, Partition p) {
  return Congruence(std::move(a), std::move(p), Congruence::Unchecked{});
}

Congruence Congruence::identity(const FiniteAlgebra& a) {
  return make_congruence_unchecked(a, Partition::identity(a.size()));
}

Congruence Congruence::universal(const FiniteAlgebra& a) {
  return make_congruence_unchecked(a, Partition::universal(a.size()));
}

std::string witness_name(std::size_t i) { return "w" + std::to_string(i); }

namespace {

void check_pairs(const FiniteAlgebra& a, std::span<const ElementPair> pairs) {
  for (auto [x, y] : pairs)
    if (x >= a.size() || y >= a.size())
      throw PreconditionError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                              ") out of range for an algebra of size " + std::to_string(a.size()));
}

void require_same_algebra(const Congruence& x, const Congruence& y) {
  if (!(x.algebra() == y.algebra())) throw PreconditionError("congruences of different algebras");
}

}  // namespace

PrincipalResult principal_congruence(const FiniteAlgebra& a, std::span<const ElementPair> pairs,
                                     bool want_certificates) {
  check_pairs(a, pairs);
  const std::size_t n = a.size();
  Tuple c, d;
  for (auto [x, y] : pairs) {
    c.push_back(x);
    d.push_back(y);
  }
  DisjointSets sets(n);
  std::optional<Provenance> prov;
  if (want_certificates) prov.emplace(c, d);

  struct Pending {
    Element from, to;
    std::size_t edge;  // index into provenance edges, unused without certificates
  };
  std::deque<Pending> queue;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (!sets.unite(c[j], d[j])) continue;
    std::size_t id = 0;
    if (prov) {
      id = prov->edges().size();
      prov->add({c[j], d[j], j, Term::variable(kSlotVariable), {}});
    }
    queue.push_back({c[j], d[j], id});
  }

  const auto& syms = a.signature().symbols();
  std::vector<Element> args;
  while (!queue.empty()) {
    const Pending cur = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < syms.size(); ++s) {
      const std::size_t m = syms[s].arity;
      for (std::size_t pos = 0; pos < m; ++pos) {
        for_each_tuple(n, m - 1, [&](std::span<const Element> rest) {
          args.resize(m);
          for (std::size_t i = 0, r = 0; i < m; ++i) args[i] = i == pos ? cur.from : rest[r++];
          const Element lhs = a.apply(s, args);
          args[pos] = cur.to;
          const Element rhs = a.apply(s, args);
          if (!sets.unite(lhs, rhs)) return;
          std::size_t id = 0;
          if (prov) {
            const auto& src = prov->edges()[cur.edge];
            Provenance::Edge e{lhs, rhs, src.generator, {}, src.constants};
            std::vector<Term> sub;
            for (std::size_t i = 0, r = 0; i < m; ++i) {
              if (i == pos) {
                sub.push_back(src.polynomial);
              } else {
                e.constants.push_back(rest[r++]);
                sub.push_back(Term::variable(witness_name(e.constants.size())));
              }
            }
            e.polynomial = Term{syms[s].name, static_cast<int>(s), std::move(sub)};
            id = prov->edges().size();
            prov->add(std::move(e));
          }
          queue.push_back({lhs, rhs, id});
        });
      }
    }
  }
  return PrincipalResult{make_congruence_unchecked(a, sets.partition()), std::move(prov)};
}

Congruence theta(const FiniteAlgebra& a, std::span<const ElementPair> pairs) {
  return principal_congruence(a, pairs, false).congruence;
}

Congruence theta(const FiniteAlgebra& a, Element x, Element y) {
  const ElementPair p{x, y};
  return theta(a, std::span<const ElementPair>(&p, 1));
}

Congruence theta(const FiniteAlgebra& a, std::span<const Element> xs, std::span<const Element> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("tuples of different length");
  std::vector<ElementPair> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) pairs.emplace_back(xs[i], ys[i]);
  return theta(a, pairs);
}

MaltsevCertificate extract_certificate(const FiniteAlgebra& alg, const Provenance& provenance,
                                       ElementPair pair) {
  const auto [a, b] = pair;
  if (a >= alg.size() || b >= alg.size()) throw PreconditionError("pair out of range");

  struct Arc {
    std::size_t edge;
    Element other;
    bool forward;  // traversed from p(c) to p(d)
  };
  std::vector<std::vector<Arc>> adj(alg.size());
  const auto& edges = provenance.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].from].push_back({i, edges[i].to, true});
    adj[edges[i].to].push_back({i, edges[i].from, false});
  }
  // Path in the merge forest.
  std::vector<std::optional<std::pair<Element, Arc>>> came(alg.size());
  std::vector<bool> seen(alg.size(), false);
  std::deque<Element> bfs{a};
  seen[a] = true;
  while (!bfs.empty()) {
    Element x = bfs.front();
    bfs.pop_front();
    for (const Arc& arc : adj[x]) {
      if (seen[arc.other]) continue;
      seen[arc.other] = true;
      came[arc.other] = std::make_pair(x, arc);
      bfs.push_back(arc.other);
    }
  }
  if (!seen[b])
    throw PreconditionError("(" + std::to_string(a) + "," + std::to_string(b) +
                            ") is not in the generated congruence");
  std::vector<Arc> path;
  for (Element x = b; x != a; x = came[x]->first) path.push_back(came[x]->second);
  std::reverse(path.begin(), path.end());

  MaltsevCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.c = provenance.c();
  cert.d = provenance.d();
  Element current = a;
  auto pad = [&] {
    cert.steps.push_back({Term::variable(witness_name(1)), 0, {current}, current});
  };
  for (const Arc& arc : path) {
    const bool need_forward = cert.steps.size() % 2 == 0;
    if (arc.forward != need_forward) pad();
    const auto& e = edges[arc.edge];
    current = arc.forward ? e.to : e.from;
    cert.steps.push_back({e.polynomial, e.generator, e.constants, current});
  }
  if (cert.steps.size() % 2 == 0 || cert.steps.empty()) pad();
  return cert;
}

CertificateCheck verify_certificate(const FiniteAlgebra& alg, const MaltsevCertificate& cert) {
  CertificateCheck out;
  if (cert.c.size() != cert.d.size()) throw PreconditionError("generator tuples differ in length");
  if (cert.steps.empty() || cert.steps.size() % 2 == 0) {
    out.message = "chain length " + std::to_string(cert.steps.size()) + " is not odd";
    return out;
  }
  if (cert.a >= alg.size() || cert.b >= alg.size()) {
    out.message = "endpoint out of range";
    return out;
  }
  std::vector<Element> at_c, at_d;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& step = cert.steps[i];
    std::set<std::string> vars;
    collect_variables(step.polynomial, vars);
    Env env;
    for (std::size_t w = 0; w < step.constants.size(); ++w) {
      if (step.constants[w] >= alg.size())
        throw PreconditionError("step " + std::to_string(i + 1) + ": constant out of range");
      env[witness_name(w + 1)] = step.constants[w];
    }
    for (const auto& v : vars) {
      if (v == kSlotVariable) continue;
      if (!env.count(v))
        throw PreconditionError("step " + std::to_string(i + 1) + ": unbound variable '" + v + "'");
    }
    const bool uses_slot = vars.count(kSlotVariable) > 0;
    if (uses_slot && step.generator >= cert.c.size())
      throw PreconditionError("step " + std::to_string(i + 1) + ": generator index out of range");
    if (uses_slot) env[kSlotVariable] = cert.c[step.generator];
    at_c.push_back(eval_term(alg, step.polynomial, env));
    if (uses_slot) env[kSlotVariable] = cert.d[step.generator];
    at_d.push_back(eval_term(alg, step.polynomial, env));
  }
  const std::size_t k = cert.steps.size();
  auto fail = [&](std::string msg) {
    out.message = std::move(msg);
    return out;
  };
  if (at_c[0] != cert.a) return fail("a != t1(c)");
  if (at_d[k - 1] != cert.b) return fail("b != tk(d)");
  for (std::size_t i = 1; i < k; ++i) {  // 1-based i pairs (i, i+1)
    const bool odd = i % 2 == 1;
    const auto& side = odd ? at_d : at_c;
    if (side[i - 1] != side[i])
      return fail("t" + std::to_string(i) + "(" + (odd ? "d" : "c") + ") != t" +
                  std::to_string(i + 1) + "(" + (odd ? "d" : "c") + ")");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Element expected = (i % 2 == 0) ? at_d[i] : at_c[i];
    if (cert.steps[i].value != expected)
      return fail("recorded value of step " + std::to_string(i + 1) + " is wrong");
  }
  out.valid = true;
  return out;
}

std::string to_string(const MaltsevCertificate& cert) {
  std::string out = "(" + std::to_string(cert.a) + "," + std::to_string(cert.b) + ") k=" +
                    std::to_string(cert.steps.size()) + "\n";
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    out += "  " + std::to_string(i + 1) + ": " + to_string(s.polynomial) + "  lambda=(";
    for (std::size_t w = 0; w < s.constants.size(); ++w)
      out += (w ? "," : "") + std::to_string(s.constants[w]);
    out += ")  generator " + std::to_string(s.generator) + (i % 2 == 0 ? " c->d" : " d->c") +
           "  value " + std::to_string(s.value) + "\n";
  }
  return out;
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a, std::size_t cap) {
  if (a.size() > cap)
    throw SizeCapExceeded("congruence lattice enumeration refused: size " +
                          std::to_string(a.size()) + " exceeds cap " + std::to_string(cap));
  std::set<Partition> found{Partition::identity(a.size())};
  std::vector<Partition> list{Partition::identity(a.size())};
  for (Element x = 0; x < a.size(); ++x) {
    for (Element y = x + 1; y < a.size(); ++y) {
      auto p = theta(a, x, y).partition();
      if (found.insert(p).second) list.push_back(std::move(p));
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto p = list[i].join(list[j]);
      if (found.insert(p).second) list.push_back(std::move(p));
    }
  }
  std::vector<Congruence> out;
  out.reserve(found.size());
  for (const auto& p : found) out.push_back(make_congruence_unchecked(a, p));
  return out;
}

Congruence congruence_join(const Congruence& x, const Congruence& y) {
  require_same_algebra(x, y);
  return make_congruence_unchecked(x.algebra(), x.partition().join(y.partition()));
}

Congruence congruence_meet(const Congruence& x, const Congruence& y) {
  require_same_algebra(x, y);
  return make_congruence_unchecked(x.algebra(), x.partition().meet(y.partition()));
}

namespace {

/// (p, r) with p x q, q y r for some q.
std::vector<bool> compose(const Partition& x, const Partition& y) {
  const std::size_t n = x.size();
  std::vector<bool> rel(n * n, false);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (x.related(static_cast<Element>(p), static_cast<Element>(q)))
        for (std::size_t r = 0; r < n; ++r)
          if (y.related(static_cast<Element>(q), static_cast<Element>(r))) rel[p * n + r] = true;
  return rel;
}

}  // namespace

bool permutes(const Congruence& x, const Congruence& y) {
  require_same_algebra(x, y);
  return compose(x.partition(), y.partition()) == compose(y.partition(), x.partition());
}

std::vector<Element> solve_system(const FiniteAlgebra& a,
                                  std::span<const SystemConstraint> constraints) {
  for (const auto& c : constraints) {
    if (!(c.congruence.algebra() == a)) throw PreconditionError("constraint on a different algebra");
    if (c.element >= a.size()) throw PreconditionError("constraint element out of range");
  }
  std::vector<Element> out;
  for (Element x = 0; x < a.size(); ++x) {
    bool ok = true;
    for (const auto& c : constraints)
      if (!c.congruence.related(x, c.element)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

bool is_factor_pair(const Congruence& x, const Congruence& y) {
  require_same_algebra(x, y);
  if (!x.partition().meet(y.partition()).is_identity()) return false;
  const auto rel = compose(x.partition(), y.partition());
  return std::all_of(rel.begin(), rel.end(), [](bool b) { return b; });
}

std::vector<FactorPair> factor_pairs(const FiniteAlgebra& a, std::size_t cap) {
  const auto cons = all_congruences(a, cap);
  std::vector<FactorPair> out;
  for (const auto& x : cons)
    for (const auto& y : cons)
      if (is_factor_pair(x, y)) out.push_back({x, y});
  return out;
}

Partition product_partition(const Partition& left, const Partition& right) {
  const std::size_t nb = right.size();
  std::vector<Element> reps(left.size() * nb);
  for (std::size_t x = 0; x < left.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      reps[x * nb + y] = static_cast<Element>(left.rep(static_cast<Element>(x)) * nb +
                                              right.rep(static_cast<Element>(y)));
  return Partition::from_representatives(std::move(reps));
}

std::optional<FactoredCongruence> factorize_product_congruence(const FiniteAlgebra& a,
                                                               const FiniteAlgebra& b,
                                                               const Congruence& theta) {
  const auto prod = product(a, b);
  if (!(theta.algebra() == prod.algebra))
    throw PreconditionError("congruence does not live on the product of the given algebras");
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  std::vector<bool> left(na * na, false), right(nb * nb, false);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (theta.related(static_cast<Element>(x), static_cast<Element>(y))) {
        left[(x / nb) * na + y / nb] = true;
        right[(x % nb) * nb + y % nb] = true;
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool in_product = left[(x / nb) * na + y / nb] && right[(x % nb) * nb + y % nb];
      if (in_product != theta.related(static_cast<Element>(x), static_cast<Element>(y)))
        return std::nullopt;
    }
  std::vector<ElementPair> lp, rp;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < na; ++y)
      if (left[x * na + y]) lp.emplace_back(x, y);
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      if (right[x * nb + y]) rp.emplace_back(x, y);
  return FactoredCongruence{Congruence(a, Partition::generated(na, lp)),
                            Congruence(b, Partition::generated(nb, rp))};
}

FhpCheck check_fhp_instance(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const auto prod = product(a, b);
  const std::size_t nb = b.size(), n = prod.algebra.size();
  std::map<ElementPair, Partition> left_cache, right_cache;
  auto cached = [](std::map<ElementPair, Partition>& cache, const FiniteAlgebra& alg, Element x,
                   Element y) -> const Partition& {
    const ElementPair key{std::min(x, y), std::max(x, y)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, theta(alg, key.first, key.second).partition()).first;
    return it->second;
  };
  FhpCheck out;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      ++out.pairs_checked;
      if (y < x) continue;  // symmetric
      const auto whole = theta(prod.algebra, x, y).partition();
      const auto& l = cached(left_cache, a, static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      const auto& r = cached(right_cache, b, static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      if (whole != product_partition(l, r) && out.holds) {
        out.holds = false;
        auto split = [nb](Element z) {
          return ElementPair{static_cast<Element>(z / nb), static_cast<Element>(z % nb)};
        };
        out.counterexample = std::make_pair(split(x), split(y));
      }
    }
  }
  return out;
}

}  // namespace ua
