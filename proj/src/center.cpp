#include "ua/center.hpp"

#include <algorithm>
#include <map>

namespace ua {

std::string tuple_string(std::span<const Element> t) {
  if (t.size() == 1) return std::to_string(t[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

std::vector<ElementPair> one_pairs(const FiniteAlgebra& a, std::span<const Element> e) {
  if (e.size() != a.tuple_length()) throw PreconditionError("tuple length mismatch");
  std::vector<ElementPair> out;
  for (std::size_t j = 0; j < e.size(); ++j) out.emplace_back(a.one()[j], e[j]);
  return out;
}

std::vector<ElementPair> zero_pairs(const FiniteAlgebra& a, std::span<const Element> e) {
  if (e.size() != a.tuple_length()) throw PreconditionError("tuple length mismatch");
  std::vector<ElementPair> out;
  for (std::size_t j = 0; j < e.size(); ++j) out.emplace_back(a.zero()[j], e[j]);
  return out;
}

namespace {

void require_nondegenerate(const FiniteAlgebra& a) {
  if (a.degenerate_constants())
    throw DegenerateConstants("algebra '" + a.name() + "' has 0 = 1 with more than one element");
}

/// Componentwise unique solution of z ≡ t0 (c0), z ≡ t1 (c1), or nothing.
std::optional<Tuple> solve_pair(const FiniteAlgebra& a, const Congruence& c0,
                                std::span<const Element> t0, const Congruence& c1,
                                std::span<const Element> t1) {
  Tuple out;
  for (std::size_t j = 0; j < t0.size(); ++j) {
    const SystemConstraint cs[] = {{c0, t0[j]}, {c1, t1[j]}};
    auto sol = solve_system(a, cs);
    if (sol.size() != 1) return std::nullopt;
    out.push_back(sol.front());
  }
  return out;
}

std::string pair_string(const Congruence& x, const Congruence& y) {
  return "(" + x.to_string() + " | " + y.to_string() + ")";
}

}  // namespace

std::vector<CentralElement> central_elements(const FiniteAlgebra& a, CenterOptions opts) {
  require_nondegenerate(a);
  std::map<Tuple, CentralElement> found;
  for (const auto& fp : factor_pairs(a, opts.congruence_cap)) {
    auto e = solve_pair(a, fp.first, a.zero(), fp.second, a.one());
    if (!e)
      throw CenterViolation("factor pair " + pair_string(fp.first, fp.second) +
                            " does not determine a unique tuple");
    auto [it, fresh] = found.try_emplace(*e, CentralElement{*e, fp.first, fp.second});
    if (!fresh)
      throw CenterViolation("tuple " + tuple_string(*e) + " is determined by two factor pairs " +
                            pair_string(it->second.theta0, it->second.theta1) + " and " +
                            pair_string(fp.first, fp.second));
  }
  std::vector<CentralElement> out;
  for (auto& [t, ce] : found) out.push_back(std::move(ce));
  return out;
}

CenterAlgebra::CenterAlgebra(const FiniteAlgebra& a, CenterOptions opts)
    : algebra_(a), elements_(central_elements(a, opts)), congruence_cap_(opts.congruence_cap) {
  const std::size_t m = elements_.size();
  bottom_ = *index_of(a.zero());
  top_ = *index_of(a.one());
  meet_.assign(m * m, 0);
  join_.assign(m * m, 0);
  complement_.assign(m, 0);
  auto locate = [&](const std::optional<Tuple>& t, const std::string& what) {
    if (!t) throw CenterViolation(what + " has no unique solution");
    auto idx = index_of(*t);
    if (!idx) throw CenterViolation(what + " = " + tuple_string(*t) + " is not central");
    return *idx;
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = elements_[i];
    complement_[i] = locate(solve_pair(a, e.theta0, a.one(), e.theta1, a.zero()),
                            "complement of " + tuple_string(e.tuple));
    for (std::size_t j = 0; j < m; ++j) {
      const auto& f = elements_[j];
      const std::string names = tuple_string(e.tuple) + ", " + tuple_string(f.tuple);
      meet_[i * m + j] = locate(solve_pair(a, congruence_meet(e.theta0, f.theta0), a.zero(),
                                           congruence_join(e.theta1, f.theta1), a.one()),
                                "meet of " + names);
      join_[i * m + j] = locate(solve_pair(a, congruence_join(e.theta0, f.theta0), a.zero(),
                                           congruence_meet(e.theta1, f.theta1), a.one()),
                                "join of " + names);
    }
  }
}

std::optional<std::size_t> CenterAlgebra::index_of(std::span<const Element> tuple) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (std::equal(tuple.begin(), tuple.end(), elements_[i].tuple.begin(), elements_[i].tuple.end()))
      return i;
  return std::nullopt;
}

bool CenterAlgebra::leq(std::size_t i, std::size_t j) const {
  return elements_.at(i).theta0.refines(elements_.at(j).theta0);
}

std::vector<std::size_t> CenterAlgebra::atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i == bottom_) continue;
    bool atom = true;
    for (std::size_t j = 0; j < size() && atom; ++j)
      if (j != bottom_ && j != i && leq(j, i)) atom = false;
    if (atom) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> CenterAlgebra::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      if (i == j || !leq(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < size() && cover; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

CenterAlgebra center_algebra(const FiniteAlgebra& a, CenterOptions opts) {
  return CenterAlgebra(a, opts);
}

CheckReport check_boolean_laws(const CenterAlgebra& z) {
  CheckReport report;
  const std::size_t m = z.size();
  auto name = [&](std::size_t i) { return tuple_string(z.tuple(i)); };
  auto law = [&](const std::string& label, auto&& holds) {
    std::string witness;
    for (std::size_t x = 0; x < m && witness.empty(); ++x)
      for (std::size_t y = 0; y < m && witness.empty(); ++y)
        for (std::size_t w = 0; w < m && witness.empty(); ++w)
          if (!holds(x, y, w)) witness = "x=" + name(x) + " y=" + name(y) + " z=" + name(w);
    report.add(label, witness.empty(), witness);
  };
  auto mt = [&](std::size_t x, std::size_t y) { return z.meet(x, y); };
  auto jn = [&](std::size_t x, std::size_t y) { return z.join(x, y); };
  law("meet-commutative", [&](auto x, auto y, auto) { return mt(x, y) == mt(y, x); });
  law("join-commutative", [&](auto x, auto y, auto) { return jn(x, y) == jn(y, x); });
  law("meet-associative", [&](auto x, auto y, auto w) { return mt(mt(x, y), w) == mt(x, mt(y, w)); });
  law("join-associative", [&](auto x, auto y, auto w) { return jn(jn(x, y), w) == jn(x, jn(y, w)); });
  law("absorption", [&](auto x, auto y, auto) { return mt(x, jn(x, y)) == x && jn(x, mt(x, y)) == x; });
  law("distributive", [&](auto x, auto y, auto w) {
    return mt(x, jn(y, w)) == jn(mt(x, y), mt(x, w)) && jn(x, mt(y, w)) == mt(jn(x, y), jn(x, w));
  });
  law("bounds", [&](auto x, auto, auto) {
    return mt(x, z.bottom()) == z.bottom() && jn(x, z.top()) == z.top() && mt(x, z.top()) == x &&
           jn(x, z.bottom()) == x;
  });
  law("complement", [&](auto x, auto, auto) {
    return mt(x, z.complement(x)) == z.bottom() && jn(x, z.complement(x)) == z.top();
  });
  return report;
}

CheckReport check_center_axioms(const CenterAlgebra& z) {
  CheckReport report;
  const auto& a = z.algebra();
  const std::size_t m = z.size();
  auto name = [&](std::size_t i) { return tuple_string(z.tuple(i)); };
  std::vector<Congruence> one_theta, zero_theta;
  for (std::size_t i = 0; i < m; ++i) {
    one_theta.push_back(theta(a, one_pairs(a, z.tuple(i))));
    zero_theta.push_back(theta(a, zero_pairs(a, z.tuple(i))));
  }

  auto per_element = [&](const std::string& label, auto&& holds) {
    std::string witness;
    for (std::size_t i = 0; i < m && witness.empty(); ++i)
      if (!holds(i)) witness = "e=" + name(i);
    report.add(label, witness.empty(), witness);
  };
  auto per_pair = [&](const std::string& label, auto&& holds) {
    std::string witness;
    for (std::size_t i = 0; i < m && witness.empty(); ++i)
      for (std::size_t j = 0; j < m && witness.empty(); ++j)
        if (!holds(i, j)) witness = "e=" + name(i) + " f=" + name(j);
    report.add(label, witness.empty(), witness);
  };

  per_element("rex-instance", [&](std::size_t i) { return z.element(i).theta1 == one_theta[i]; });
  per_element("lex-instance", [&](std::size_t i) { return z.element(i).theta0 == zero_theta[i]; });
  per_pair("meet-principal", [&](std::size_t i, std::size_t j) {
    return one_theta[z.meet(i, j)] == congruence_join(one_theta[i], one_theta[j]);
  });
  per_pair("join-principal", [&](std::size_t i, std::size_t j) {
    return one_theta[z.join(i, j)] == congruence_meet(one_theta[i], one_theta[j]);
  });

  // a = e ∧ f  iff  [0,a] ∈ θ0(e) and [a,f] ∈ θ1(e); dually for the join.
  const std::size_t k = a.tuple_length();
  auto characterization = [&](const std::string& label, bool meet) {
    std::string witness;
    for (std::size_t i = 0; i < m && witness.empty(); ++i) {
      const auto& e = z.element(i);
      for (std::size_t j = 0; j < m && witness.empty(); ++j) {
        const Tuple& target = z.tuple(meet ? z.meet(i, j) : z.join(i, j));
        const Tuple& f = z.tuple(j);
        for_each_tuple(a.size(), k, [&](std::span<const Element> t) {
          if (!witness.empty()) return;
          const bool lhs = std::equal(t.begin(), t.end(), target.begin(), target.end());
          const bool rhs = meet ? e.theta0.related(a.zero(), t) && e.theta1.related(t, f)
                                : e.theta1.related(a.one(), t) && e.theta0.related(t, f);
          if (lhs != rhs) witness = "e=" + name(i) + " f=" + name(j) + " a=" + tuple_string(t);
        });
      }
    }
    report.add(label, witness.empty(), witness);
  };
  characterization("meet-characterization", true);
  characterization("join-characterization", false);

  {
    const auto pairs = factor_pairs(a, z.congruence_cap());
    per_element("dp-uniqueness", [&](std::size_t i) {
      std::size_t count = 0;
      for (const auto& fp : pairs)
        if (fp.first.related(z.tuple(i), a.zero()) && fp.second.related(z.tuple(i), a.one())) ++count;
      return count == 1;
    });
  }

  per_pair("order", [&](std::size_t i, std::size_t j) {
    const bool by_theta0 = z.element(i).theta0.refines(z.element(j).theta0);
    const bool by_theta1 = z.element(j).theta1.refines(z.element(i).theta1);
    const bool by_meet = z.meet(i, j) == i;
    return by_theta0 == by_theta1 && by_theta1 == by_meet;
  });
  return report;
}

CheckReport check_center_bijection(const CenterAlgebra& z, CenterOptions opts) {
  CheckReport report;
  const auto& a = z.algebra();
  const auto pairs = factor_pairs(a, opts.congruence_cap);
  std::vector<Congruence> fc;
  for (const auto& fp : pairs)
    if (std::find(fc.begin(), fc.end(), fp.first) == fc.end()) fc.push_back(fp.first);

  auto complement_of = [&](const Congruence& t) -> std::optional<Congruence> {
    std::optional<Congruence> out;
    for (const auto& fp : pairs) {
      if (fp.first != t) continue;
      if (out) return std::nullopt;
      out = fp.second;
    }
    return out;
  };
  auto h = [&](const Congruence& t) -> std::optional<Tuple> {
    auto star = complement_of(t);
    if (!star) return std::nullopt;
    return solve_pair(a, t, a.zero(), *star, a.one());
  };

  {
    std::string witness;
    for (const auto& t : fc)
      if (!complement_of(t)) {
        witness = t.to_string();
        break;
      }
    report.add("unique-factor-complement", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < z.size() && witness.empty(); ++i) {
      auto back = h(z.element(i).theta0);
      if (!back || *back != z.tuple(i)) witness = "e=" + tuple_string(z.tuple(i));
    }
    report.add("h-after-g", witness.empty(), witness);
  }
  {
    std::string witness;
    for (const auto& t : fc) {
      auto e = h(t);
      auto idx = e ? z.index_of(*e) : std::nullopt;
      if (!idx || z.element(*idx).theta0 != t) {
        witness = t.to_string();
        break;
      }
    }
    report.add("g-after-h", witness.empty(), witness);
  }
  report.add("cardinality", fc.size() == z.size(),
             std::to_string(z.size()) + " central, " + std::to_string(fc.size()) + " factor");
  return report;
}

HomCenterReport hom_center_check(const Homomorphism& f, CenterOptions opts) {
  HomCenterReport out;
  const CenterAlgebra za(f.source, opts), zb(f.target, opts);
  std::vector<std::size_t> image;
  for (std::size_t i = 0; i < za.size(); ++i) {
    auto idx = zb.index_of(f(za.tuple(i)));
    if (!idx) {
      out.sc_witness = za.tuple(i);
      return out;
    }
    image.push_back(*idx);
  }
  out.sc = true;
  out.csc = true;
  for (std::size_t i = 0; i < za.size(); ++i)
    if (!zb.complementary(image[i], image[za.complement(i)])) {
      out.csc = false;
      out.csc_witness = std::make_pair(za.tuple(i), za.tuple(za.complement(i)));
      break;
    }
  auto fail = [&](std::string why) {
    if (out.boolean_witness.empty()) out.boolean_witness = std::move(why);
  };
  if (image[za.bottom()] != zb.bottom()) fail("bottom not preserved");
  if (image[za.top()] != zb.top()) fail("top not preserved");
  for (std::size_t i = 0; i < za.size(); ++i) {
    if (image[za.complement(i)] != zb.complement(image[i]))
      fail("complement of " + tuple_string(za.tuple(i)));
    for (std::size_t j = 0; j < za.size(); ++j) {
      const std::string names = tuple_string(za.tuple(i)) + ", " + tuple_string(za.tuple(j));
      if (image[za.meet(i, j)] != zb.meet(image[i], image[j])) fail("meet of " + names);
      if (image[za.join(i, j)] != zb.join(image[i], image[j])) fail("join of " + names);
    }
  }
  out.boolean_hom = out.boolean_witness.empty();
  return out;
}

CentralElement lift_central(const FiniteAlgebra& a, const Congruence& theta_,
                            std::span<const Element> z, CenterOptions opts) {
  require_nondegenerate(a);
  if (!(theta_.algebra() == a)) throw PreconditionError("congruence of a different algebra");
  if (z.size() != a.tuple_length()) throw PreconditionError("tuple length mismatch");
  std::optional<Congruence> delta;
  for (const auto& c : all_congruences(a, opts.congruence_cap))
    if (is_factor_pair(theta_, c)) {
      delta = c;
      break;
    }
  if (!delta) throw PreconditionError(theta_.to_string() + " is not a factor congruence");

  const auto q = quotient(a, theta_.partition());
  const Tuple zq = q.canonical(z);
  if (q.algebra.size() > 1 && q.algebra.degenerate_constants())
    throw PreconditionError("quotient has 0 = 1");
  bool central = false;
  for (const auto& ce : central_elements(q.algebra, opts))
    if (ce.tuple == zq) central = true;
  if (!central) throw PreconditionError(tuple_string(z) + " is not central modulo " + theta_.to_string());

  auto e = solve_pair(a, theta_, z, *delta, a.one());
  if (!e) throw CenterViolation("lifting system has no unique solution");
  for (auto& ce : central_elements(a, opts))
    if (ce.tuple == *e) return ce;
  throw CenterViolation("lift " + tuple_string(*e) + " is not central");
}

bool check_codisjoint(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const auto p = product(a, b);
  const auto joined = p.first.kernel().join(p.second.kernel());
  return quotient(p.algebra, joined).algebra.size() == 1;
}

ProductStabilityReport check_product_stability(const Homomorphism& f, std::span<const Element> e,
                                               CenterOptions opts) {
  const CenterAlgebra za(f.source, opts);
  const auto idx = za.index_of(e);
  if (!idx) throw PreconditionError(tuple_string(e) + " is not central in the source");
  const Tuple g = za.tuple(za.complement(*idx));
  auto left = pushout_of_quotients(f, one_pairs(f.source, g));
  auto right = pushout_of_quotients(f, one_pairs(f.source, e));

  const auto& b = f.target;
  const auto& p1 = left.target_quotient;
  const auto& p2 = right.target_quotient;
  auto prod = product(p1.algebra, p2.algebra);
  std::vector<Element> map(b.size());
  for (Element x = 0; x < b.size(); ++x)
    map[x] = pair_index(p2.algebra, p1.canonical(x), p2.canonical(x));
  std::optional<Homomorphism> iso;
  Homomorphism canonical{b, prod.algebra, std::move(map)};
  if (prod.algebra.size() == b.size() && canonical.injective() &&
      is_homomorphism(b, prod.algebra, canonical.map).holds)
    iso = std::move(canonical);
  else if (prod.algebra.size() == b.size())
    iso = find_isomorphism(b, prod.algebra);

  ProductStabilityReport out{iso.has_value(), Tuple(e.begin(), e.end()), g, std::move(left),
                             std::move(right), std::move(iso)};
  return out;
}

}  // namespace ua
