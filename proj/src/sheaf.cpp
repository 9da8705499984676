#include "ua/sheaf.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ua/pierce.hpp"

namespace ua {

FiniteLatticeSite::FiniteLatticeSite(std::size_t size, std::vector<std::size_t> meet,
                                     std::vector<std::size_t> join, std::string name)
    : size_(size), meet_(std::move(meet)), join_(std::move(join)), name_(std::move(name)) {
  const std::size_t n = size_;
  if (n == 0) throw PreconditionError("lattice must be nonempty");
  if (meet_.size() != n * n || join_.size() != n * n)
    throw PreconditionError("lattice tables must have " + std::to_string(n * n) + " entries");
  for (std::size_t i = 0; i < n * n; ++i)
    if (meet_[i] >= n || join_[i] >= n) throw PreconditionError("lattice table entry out of range");
  auto fail = [](const std::string& law, std::size_t a, std::size_t b, std::size_t c) {
    throw PreconditionError("not a distributive lattice: " + law + " fails at (" + std::to_string(a) +
                            "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (this->meet(a, a) != a || this->join(a, a) != a) fail("idempotence", a, a, a);
    for (std::size_t b = 0; b < n; ++b) {
      if (this->meet(a, b) != this->meet(b, a) || this->join(a, b) != this->join(b, a))
        fail("commutativity", a, b, b);
      if (this->meet(a, this->join(a, b)) != a || this->join(a, this->meet(a, b)) != a)
        fail("absorption", a, b, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (this->meet(this->meet(a, b), c) != this->meet(a, this->meet(b, c)) ||
            this->join(this->join(a, b), c) != this->join(a, this->join(b, c)))
          fail("associativity", a, b, c);
        if (this->meet(a, this->join(b, c)) != this->join(this->meet(a, b), this->meet(a, c)))
          fail("distributivity", a, b, c);
      }
    }
  }
  bottom_ = 0;
  top_ = 0;
  for (std::size_t a = 1; a < n; ++a) {
    bottom_ = this->meet(bottom_, a);
    top_ = this->join(top_, a);
  }
}

FiniteLatticeSite FiniteLatticeSite::chain(std::size_t n) {
  std::vector<std::size_t> meet(n * n), join(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      meet[a * n + b] = std::min(a, b);
      join[a * n + b] = std::max(a, b);
    }
  return FiniteLatticeSite(n, std::move(meet), std::move(join), std::to_string(n) + "-chain");
}

FiniteLatticeSite FiniteLatticeSite::boolean(std::size_t m) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::size_t> meet(n * n), join(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      meet[a * n + b] = a & b;
      join[a * n + b] = a | b;
    }
  return FiniteLatticeSite(n, std::move(meet), std::move(join), "2^" + std::to_string(m));
}

FiniteLatticeSite FiniteLatticeSite::from_center(const CenterAlgebra& z) {
  const std::size_t n = z.size();
  std::vector<std::size_t> meet(n * n), join(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      meet[a * n + b] = z.meet(a, b);
      join[a * n + b] = z.join(a, b);
    }
  return FiniteLatticeSite(n, std::move(meet), std::move(join), "Z(" + z.algebra().name() + ")");
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteLatticeSite::partitions_of(std::size_t d) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = 0; b < size_; ++b)
      if (join(a, b) == d && meet(a, b) == bottom_) out.emplace_back(a, b);
  return out;
}

std::vector<std::size_t> FiniteLatticeSite::complemented_below(std::size_t d) const {
  std::vector<std::size_t> out;
  for (auto [a, b] : partitions_of(d))
    if (out.empty() || out.back() != a) out.push_back(a);
  return out;
}

SetSheaf::SetSheaf(const FiniteLatticeSite& site, std::vector<std::size_t> counts)
    : site_(site), counts_(std::move(counts)) {
  const std::size_t n = site_.size();
  if (counts_.size() != n) throw PreconditionError("one section count per lattice element required");
  maps_.resize(n * n);
  present_.assign(n * n, false);
  for (std::size_t d = 0; d < n; ++d) {
    auto& id = maps_[d * n + d];
    for (std::size_t x = 0; x < counts_[d]; ++x) id.push_back(x);
    present_[d * n + d] = true;
  }
}

void SetSheaf::set_restriction(std::size_t d, std::size_t c, std::vector<std::size_t> map) {
  if (!site_.leq(c, d)) throw PreconditionError("restriction needs c <= d");
  if (map.size() != counts_.at(d)) throw PreconditionError("restriction map has the wrong length");
  for (std::size_t v : map)
    if (v >= counts_.at(c)) throw PreconditionError("restriction value out of range");
  maps_[d * site_.size() + c] = std::move(map);
  present_[d * site_.size() + c] = true;
}

const std::vector<std::size_t>& SetSheaf::restriction(std::size_t d, std::size_t c) const {
  const std::size_t i = d * site_.size() + c;
  if (!site_.leq(c, d) || !present_.at(i))
    throw PreconditionError("no restriction from " + std::to_string(d) + " to " + std::to_string(c));
  return maps_[i];
}

std::size_t SetSheaf::restrict(std::size_t d, std::size_t c, std::size_t x) const {
  return restriction(d, c).at(x);
}

CheckReport check_sheaf(const SetSheaf& x) {
  CheckReport report;
  const auto& site = x.site();
  const std::size_t n = site.size();
  {
    std::string witness;
    for (std::size_t d = 0; d < n && witness.empty(); ++d)
      for (std::size_t c = 0; c < n && witness.empty(); ++c)
        if (site.leq(c, d)) try {
            x.restriction(d, c);
          } catch (const PreconditionError&) {
            witness = std::to_string(d) + " -> " + std::to_string(c);
          }
    report.add("restrictions-defined", witness.empty(), witness);
    if (!witness.empty()) return report;
  }
  {
    std::string witness;
    for (std::size_t d = 0; d < n && witness.empty(); ++d)
      for (std::size_t s = 0; s < x.count(d); ++s)
        if (x.restrict(d, d, s) != s) {
          witness = "d=" + std::to_string(d);
          break;
        }
    report.add("identity", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t d = 0; d < n && witness.empty(); ++d)
      for (std::size_t c = 0; c < n && witness.empty(); ++c)
        for (std::size_t b = 0; b < n && witness.empty(); ++b) {
          if (!site.leq(c, d) || !site.leq(b, c)) continue;
          for (std::size_t s = 0; s < x.count(d); ++s)
            if (x.restrict(c, b, x.restrict(d, c, s)) != x.restrict(d, b, s)) {
              witness = std::to_string(b) + " <= " + std::to_string(c) + " <= " + std::to_string(d);
              break;
            }
        }
    report.add("composition", witness.empty(), witness);
  }
  report.add("bottom-singleton", x.count(site.bottom()) == 1,
             std::to_string(x.count(site.bottom())) + " sections at bottom");
  {
    std::string witness;
    for (std::size_t a = 0; a < n && witness.empty(); ++a)
      for (std::size_t b = a; b < n && witness.empty(); ++b) {
        const std::size_t d = site.join(a, b), m = site.meet(a, b);
        for (std::size_t s = 0; s < x.count(a) && witness.empty(); ++s)
          for (std::size_t t = 0; t < x.count(b) && witness.empty(); ++t) {
            if (x.restrict(a, m, s) != x.restrict(b, m, t)) continue;
            std::size_t amalgams = 0;
            for (std::size_t u = 0; u < x.count(d); ++u)
              if (x.restrict(d, a, u) == s && x.restrict(d, b, u) == t) ++amalgams;
            if (amalgams != 1)
              witness = "cover " + std::to_string(a) + "," + std::to_string(b) + " sections " +
                        std::to_string(s) + "," + std::to_string(t) + ": " +
                        std::to_string(amalgams) + " amalgams";
          }
      }
    report.add("gluing", witness.empty(), witness);
  }
  return report;
}

SetSheaf terminal_sheaf(const FiniteLatticeSite& site) {
  const std::size_t n = site.size();
  SetSheaf out(site, std::vector<std::size_t>(n, 1));
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c)
      if (c != d && site.leq(c, d)) out.set_restriction(d, c, {0});
  out.labels.assign(n, {"*"});
  return out;
}

SetSheaf sheaf_coproduct(const FiniteLatticeSite& site, const SetSheaf& x, const SetSheaf& y) {
  if (!check_sheaf(x).passed() || !check_sheaf(y).passed())
    throw PreconditionError("coproduct summands must be sheaves");
  const std::size_t n = site.size();
  using Section = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<std::vector<Section>> sections(n);
  std::vector<std::map<Section, std::size_t>> index(n);
  for (std::size_t d = 0; d < n; ++d)
    for (auto [a, b] : site.partitions_of(d))
      for (std::size_t s = 0; s < x.count(a); ++s)
        for (std::size_t t = 0; t < y.count(b); ++t) {
          index[d][{a, b, s, t}] = sections[d].size();
          sections[d].emplace_back(a, b, s, t);
        }
  std::vector<std::size_t> counts;
  for (const auto& s : sections) counts.push_back(s.size());
  SetSheaf out(site, counts);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == d || !site.leq(c, d)) continue;
      std::vector<std::size_t> map;
      for (const auto& [a, b, s, t] : sections[d]) {
        const std::size_t ac = site.meet(a, c), bc = site.meet(b, c);
        map.push_back(index[c].at({ac, bc, x.restrict(a, ac, s), y.restrict(b, bc, t)}));
      }
      out.set_restriction(d, c, std::move(map));
    }
  }
  out.labels.resize(n);
  for (std::size_t d = 0; d < n; ++d)
    for (const auto& [a, b, s, t] : sections[d])
      out.labels[d].push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(s) + "," + std::to_string(t) + ")");
  const auto verdict = check_sheaf(out);
  if (!verdict.passed()) throw Error("coproduct is not a sheaf");
  return out;
}

SetSheaf partition_object(const FiniteLatticeSite& site) {
  const auto one = terminal_sheaf(site);
  return sheaf_coproduct(site, one, one);
}

SetSheaf AlgebraSheaf::underlying() const {
  const std::size_t n = site.size();
  std::vector<std::size_t> counts;
  for (const auto& s : sections) counts.push_back(s.size());
  SetSheaf out(site, counts);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c) {
      if (c == d || !site.leq(c, d)) continue;
      const auto& r = restriction(d, c);
      out.set_restriction(d, c, std::vector<std::size_t>(r.begin(), r.end()));
    }
  return out;
}

AlgebraSheaf constant_sheaf(const FiniteLatticeSite& site, const FiniteAlgebra& a) {
  const std::size_t n = site.size();
  AlgebraSheaf out{site, {}, {}};
  const auto trivial = trivial_algebra(a.signature_ptr());
  for (std::size_t d = 0; d < n; ++d) out.sections.push_back(d == site.bottom() ? trivial : a);
  out.restrictions.resize(n * n);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c) {
      if (!site.leq(c, d)) continue;
      auto& r = out.restrictions[d * n + c];
      for (Element x = 0; x < out.sections[d].size(); ++x) r.push_back(c == site.bottom() ? 0 : x);
    }
  return out;
}

AlgebraSheaf to_algebra_sheaf(const PierceSheaf& sheaf) {
  const auto& z = sheaf.base();
  const std::size_t n = z.size();
  AlgebraSheaf out{FiniteLatticeSite::from_center(z), {}, {}};
  for (std::size_t e = 0; e < n; ++e) out.sections.push_back(sheaf.section(e).algebra);
  out.restrictions.resize(n * n);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c)
      if (z.leq(c, d)) out.restrictions[d * n + c] = sheaf.restriction(d, c).map;
  return out;
}

RepresentationReport check_representation(const AlgebraSheaf& x, CenterOptions opts) {
  const auto& site = x.site;
  const std::size_t n = site.size();
  if (x.sections.size() != n) throw PreconditionError("one section algebra per lattice element required");
  if (x.restrictions.size() != n * n) throw PreconditionError("restriction table has the wrong shape");
  for (std::size_t d = 0; d < n; ++d) {
    if (!x.sections[d].same_signature(x.sections[0]))
      throw PreconditionError("sections do not share a signature");
    for (std::size_t c = 0; c < n; ++c) {
      if (!site.leq(c, d)) continue;
      const auto& r = x.restriction(d, c);
      if (r.size() != x.sections[d].size())
        throw PreconditionError("restriction " + std::to_string(d) + " -> " + std::to_string(c) +
                                " has the wrong length");
      for (Element v : r)
        if (v >= x.sections[c].size()) throw PreconditionError("restriction value out of range");
      if (!is_homomorphism(x.sections[d], x.sections[c], r).holds)
        throw PreconditionError("restriction " + std::to_string(d) + " -> " + std::to_string(c) +
                                " is not a homomorphism");
    }
  }

  RepresentationReport out;
  out.checks.append(check_sheaf(x.underlying()));
  {
    std::string witness;
    for (std::size_t d = 0; d < n && witness.empty(); ++d)
      if (x.sections[d].size() == 1 && d != site.bottom()) witness = "d=" + std::to_string(d);
    out.checks.add("trivial-only-at-bottom", witness.empty(), witness);
  }

  std::vector<std::vector<Tuple>> centers(n);
  {
    std::string witness;
    for (std::size_t d = 0; d < n; ++d) {
      try {
        for (const auto& ce : central_elements(x.sections[d], opts)) centers[d].push_back(ce.tuple);
      } catch (const Error& err) {
        if (witness.empty()) witness = "d=" + std::to_string(d) + ": " + err.what();
      }
    }
    out.checks.add("section-centers", witness.empty(), witness);
    if (!witness.empty()) return out;
  }

  auto restrict_tuple = [&](std::size_t d, std::size_t c, const Tuple& t) {
    Tuple r;
    for (Element v : t) r.push_back(x.restriction(d, c)[v]);
    return r;
  };
  out.alpha.resize(n);
  std::string bijective_witness;
  for (std::size_t d = 0; d < n; ++d) {
    const auto parts = site.partitions_of(d);
    std::vector<bool> used(n, false);
    for (const auto& zt : centers[d]) {
      std::optional<std::size_t> match;
      bool ambiguous = false;
      for (auto [c, cc] : parts) {
        if (restrict_tuple(d, c, zt) == x.sections[c].one() &&
            restrict_tuple(d, cc, zt) == x.sections[cc].zero()) {
          if (match) ambiguous = true;
          match = c;
        }
      }
      if (ambiguous) match.reset();
      out.alpha[d].push_back(match);
      if (!match) {
        if (bijective_witness.empty())
          bijective_witness = "d=" + std::to_string(d) + ": central " + tuple_string(zt) +
                              " matches no unique complemented element";
      } else if (used[*match]) {
        if (bijective_witness.empty())
          bijective_witness = "d=" + std::to_string(d) + ": two central elements match " +
                              std::to_string(*match);
      } else {
        used[*match] = true;
      }
    }
    const auto below = site.complemented_below(d);
    if (bijective_witness.empty() && centers[d].size() != below.size())
      bijective_witness = "d=" + std::to_string(d) + ": |Z(X(d))| = " +
                          std::to_string(centers[d].size()) + " but |Z(down d)| = " +
                          std::to_string(below.size());
  }
  out.checks.add("alpha-bijective", bijective_witness.empty(), bijective_witness);

  {
    std::string witness;
    for (std::size_t d = 0; d < n && witness.empty(); ++d)
      for (std::size_t c = 0; c < n && witness.empty(); ++c) {
        if (!site.leq(c, d)) continue;
        for (std::size_t i = 0; i < centers[d].size() && witness.empty(); ++i) {
          const Tuple r = restrict_tuple(d, c, centers[d][i]);
          auto it = std::find(centers[c].begin(), centers[c].end(), r);
          const std::string where = "d=" + std::to_string(d) + " c=" + std::to_string(c) +
                                    " z=" + tuple_string(centers[d][i]);
          if (it == centers[c].end()) {
            witness = where + ": restriction is not central";
            continue;
          }
          const auto lhs = out.alpha[c][static_cast<std::size_t>(it - centers[c].begin())];
          const auto rhs = out.alpha[d][i];
          if (!lhs || !rhs || *lhs != site.meet(*rhs, c)) witness = where;
        }
      }
    out.checks.add("alpha-natural", witness.empty(), witness);
  }
  out.representation = out.checks.passed();
  return out;
}

}  // namespace ua
