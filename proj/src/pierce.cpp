#include "ua/pierce.hpp"

#include <algorithm>

namespace ua {

namespace {

/// The map A/θ → A/δ induced by the identity when θ ⊆ δ; nothing if not
/// well-defined.
std::optional<std::vector<Element>> induced_map(const FiniteAlgebra& a, const Quotient& from,
                                                const Quotient& to) {
  std::vector<Element> map(from.algebra.size(), 0);
  std::vector<bool> set(map.size(), false);
  for (Element x = 0; x < a.size(); ++x) {
    const Element b = from.canonical(x);
    const Element img = to.canonical(x);
    if (!set[b]) {
      map[b] = img;
      set[b] = true;
    } else if (map[b] != img) {
      return std::nullopt;
    }
  }
  return map;
}

}  // namespace

Homomorphism PierceSheaf::restriction(std::size_t from, std::size_t to) const {
  if (!base_.leq(to, from))
    throw PreconditionError("restriction needs " + tuple_string(base_.tuple(to)) + " <= " +
                            tuple_string(base_.tuple(from)));
  auto map = induced_map(algebra(), sections_.at(from), sections_.at(to));
  if (!map) throw Error("restriction is not well-defined");
  return Homomorphism{sections_[from].algebra, sections_[to].algebra, std::move(*map)};
}

PierceSheaf build_pierce(const FiniteAlgebra& a, CenterOptions opts) {
  CenterAlgebra z(a, opts);
  std::vector<Quotient> sections;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto principal = theta(a, one_pairs(a, z.tuple(i)));
    if (principal != z.element(i).theta1)
      throw PreconditionError("rex-instance failure at e=" + tuple_string(z.tuple(i)) +
                              ": theta(1,e) = " + principal.to_string() + " but the factor congruence is " +
                              z.element(i).theta1.to_string());
    sections.push_back(quotient(a, principal.partition()));
  }
  for (std::size_t e = 0; e < z.size(); ++e)
    for (std::size_t f = 0; f < z.size(); ++f)
      if (z.leq(f, e) && !induced_map(a, sections[e], sections[f]))
        throw PreconditionError("restriction from " + tuple_string(z.tuple(e)) + " to " +
                                tuple_string(z.tuple(f)) + " is not well-defined");
  return PierceSheaf(std::move(z), std::move(sections));
}

CheckReport check_presheaf_laws(const PierceSheaf& sheaf) {
  CheckReport report;
  const auto& z = sheaf.base();
  const std::size_t m = z.size();
  auto name = [&](std::size_t i) { return tuple_string(z.tuple(i)); };
  {
    std::string witness;
    for (std::size_t e = 0; e < m && witness.empty(); ++e) {
      const auto r = sheaf.restriction(e, e);
      for (Element x = 0; x < r.map.size(); ++x)
        if (r(x) != x) {
          witness = "e=" + name(e);
          break;
        }
    }
    report.add("restriction-identity", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t d = 0; d < m && witness.empty(); ++d)
      for (std::size_t e = 0; e < m && witness.empty(); ++e)
        for (std::size_t f = 0; f < m && witness.empty(); ++f) {
          if (!z.leq(e, d) || !z.leq(f, e)) continue;
          const auto direct = sheaf.restriction(d, f);
          const auto composed = compose(sheaf.restriction(e, f), sheaf.restriction(d, e));
          if (direct.map != composed.map) witness = name(f) + " <= " + name(e) + " <= " + name(d);
        }
    report.add("restriction-composition", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t d = 0; d < m && witness.empty(); ++d)
      for (std::size_t e = 0; e < m && witness.empty(); ++e) {
        if (!z.leq(e, d)) continue;
        const auto r = sheaf.restriction(d, e);
        if (!is_homomorphism(r.source, r.target, r.map).holds) witness = name(d) + " -> " + name(e);
      }
    report.add("restriction-homomorphism", witness.empty(), witness);
  }
  const auto& top = sheaf.global_sections();
  report.add("top-section-is-algebra",
             top.canonical.injective() && top.algebra.size() == sheaf.algebra().size(),
             std::to_string(top.algebra.size()) + " elements");
  const auto& bottom = sheaf.section(z.bottom());
  report.add("bottom-section-trivial", bottom.algebra.size() == 1,
             std::to_string(bottom.algebra.size()) + " elements");
  return report;
}

GluingResult check_sheaf_condition(const PierceSheaf& sheaf, std::size_t e, std::size_t f,
                                   std::size_t d) {
  const auto& z = sheaf.base();
  if (z.join(e, f) != d)
    throw PreconditionError("(" + tuple_string(z.tuple(e)) + ", " + tuple_string(z.tuple(f)) +
                            ") does not cover " + tuple_string(z.tuple(d)));
  const std::size_t m = z.meet(e, f);
  const auto re = sheaf.restriction(e, m), rf = sheaf.restriction(f, m);
  const auto de = sheaf.restriction(d, e), df = sheaf.restriction(d, f);
  GluingResult out;
  for (Element x = 0; x < re.map.size(); ++x) {
    for (Element y = 0; y < rf.map.size(); ++y) {
      if (re(x) != rf(y)) continue;
      ++out.pairs_checked;
      std::size_t amalgams = 0;
      for (Element s = 0; s < de.map.size(); ++s)
        if (de(s) == x && df(s) == y) ++amalgams;
      if (amalgams != 1 && out.witness.empty())
        out.witness = "sections (" + std::to_string(x) + ", " + std::to_string(y) + ") have " +
                      std::to_string(amalgams) + " amalgams";
    }
  }
  out.holds = out.witness.empty();
  return out;
}

CheckReport check_all_covers(const PierceSheaf& sheaf) {
  CheckReport report;
  const auto& z = sheaf.base();
  for (std::size_t e = 0; e < z.size(); ++e)
    for (std::size_t f = e; f < z.size(); ++f) {
      const std::size_t d = z.join(e, f);
      const auto g = check_sheaf_condition(sheaf, e, f, d);
      report.add("cover " + tuple_string(z.tuple(e)) + "," + tuple_string(z.tuple(f)) + " of " +
                     tuple_string(z.tuple(d)),
                 g.holds, g.holds ? std::to_string(g.pairs_checked) + " pairs" : g.witness);
    }
  return report;
}

std::vector<Ultrafilter> ultrafilters(const CenterAlgebra& z) {
  std::vector<Ultrafilter> out;
  for (std::size_t a : z.atoms()) {
    Ultrafilter u{a, {}};
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z.leq(a, j)) u.members.push_back(j);
    out.push_back(std::move(u));
  }
  return out;
}

bool is_ultrafilter(const CenterAlgebra& z, const std::vector<std::size_t>& members) {
  std::vector<bool> in(z.size(), false);
  for (std::size_t i : members) {
    if (i >= z.size()) return false;
    in[i] = true;
  }
  if (members.empty() || in[z.bottom()]) return false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (in[i] == in[z.complement(i)]) return false;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (in[i] && z.leq(i, j) && !in[j]) return false;
      if (in[i] && in[j] && !in[z.meet(i, j)]) return false;
    }
  }
  return true;
}

Stalk stalk(const PierceSheaf& sheaf, const Ultrafilter& u) {
  const auto& z = sheaf.base();
  const auto& a = sheaf.algebra();
  if (!is_ultrafilter(z, u.members)) throw PreconditionError("not an ultrafilter");
  if (std::find(u.members.begin(), u.members.end(), u.atom) == u.members.end() ||
      !std::all_of(u.members.begin(), u.members.end(), [&](std::size_t j) { return z.leq(u.atom, j); }))
    throw PreconditionError("ultrafilter atom is not its minimum");

  Congruence joined = Congruence::identity(a);
  for (std::size_t e : u.members) joined = congruence_join(joined, theta(a, one_pairs(a, z.tuple(e))));
  const auto at_atom = theta(a, one_pairs(a, z.tuple(u.atom)));
  auto fiber = quotient(a, joined.partition());

  bool commute = true;
  for (std::size_t e : u.members) {
    const auto to_fiber = induced_map(a, sheaf.section(e), fiber);
    if (!to_fiber) {
      commute = false;
      break;
    }
    for (std::size_t f : u.members) {
      if (!z.leq(f, e)) continue;
      const auto from_f = induced_map(a, sheaf.section(f), fiber);
      const auto r = sheaf.restriction(e, f);
      for (Element x = 0; x < r.map.size() && commute; ++x)
        if (!from_f || (*from_f)[r(x)] != (*to_fiber)[x]) commute = false;
    }
  }
  const bool collapse = joined == at_atom;
  return Stalk{u, std::move(joined), std::move(fiber), collapse, commute};
}

bool is_connected(const FiniteAlgebra& a, CenterOptions opts) {
  if (a.zero() == a.one()) return false;
  return factor_pairs(a, opts.congruence_cap).size() == 2;
}

FiniteAlgebra product_of(const std::vector<FiniteAlgebra>& factors) {
  if (factors.empty()) throw PreconditionError("empty product");
  FiniteAlgebra out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = product(out, factors[i]).algebra;
  return out;
}

Decomposition decompose(const PierceSheaf& sheaf, CenterOptions opts) {
  const auto& a = sheaf.algebra();
  std::vector<Stalk> stalks;
  for (const auto& u : ultrafilters(sheaf.base())) stalks.push_back(stalk(sheaf, u));

  std::vector<FiniteAlgebra> fibers;
  for (const auto& s : stalks) fibers.push_back(s.fiber.algebra);
  FiniteAlgebra prod = fibers.empty() ? trivial_algebra(a.signature_ptr()) : product_of(fibers);

  std::vector<Element> canonical(a.size(), 0);
  std::vector<std::vector<bool>> hit;
  for (const auto& f : fibers) hit.emplace_back(f.size(), false);
  for (Element x = 0; x < a.size(); ++x) {
    Element idx = 0;
    for (std::size_t i = 0; i < stalks.size(); ++i) {
      const Element c = stalks[i].fiber.canonical(x);
      hit[i][c] = true;
      idx = static_cast<Element>(idx * fibers[i].size() + c);
    }
    canonical[x] = idx;
  }

  Decomposition out{std::move(stalks), prod, canonical, false, false, false, false, {}, {}};
  out.homomorphism = is_homomorphism(a, prod, canonical).holds;
  std::vector<bool> image(prod.size(), false);
  std::size_t distinct = 0;
  for (Element x : canonical)
    if (!image[x]) {
      image[x] = true;
      ++distinct;
    }
  out.injective = distinct == a.size();
  out.surjective = distinct == prod.size();
  out.subdirect = std::all_of(hit.begin(), hit.end(), [](const std::vector<bool>& h) {
    return std::all_of(h.begin(), h.end(), [](bool b) { return b; });
  });
  for (const auto& s : out.stalks) {
    const bool connected = is_connected(s.fiber.algebra, opts);
    out.stalk_connected.push_back(connected);
    if (!connected && !out.csc_diagnostic)
      out.csc_diagnostic = "CSC-instance failure: stalk at atom " +
                           tuple_string(sheaf.base().tuple(s.point.atom)) + " is not connected";
  }
  return out;
}

Decomposition decompose(const FiniteAlgebra& a, CenterOptions opts) {
  return decompose(build_pierce(a, opts), opts);
}

}  // namespace ua
