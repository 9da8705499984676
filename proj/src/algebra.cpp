#include "ua/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ua {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

Element eval_closed(const Signature& sig, std::size_t n,
                    const std::vector<std::vector<Element>>& tables, const Term& t) {
  if (t.is_variable()) throw PreconditionError("constant term contains variable '" + t.name + "'");
  std::vector<Element> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_closed(sig, n, tables, a));
  return tables[static_cast<std::size_t>(t.symbol)][table_index(n, args)];
}

}  // namespace

std::size_t table_index(std::size_t n, std::span<const Element> args) {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * n + a;
  return idx;
}

FiniteAlgebra::FiniteAlgebra(SignaturePtr signature, std::size_t size,
                             std::vector<std::vector<Element>> tables, std::string name) {
  if (!signature) throw PreconditionError("algebra without signature");
  if (size == 0) throw PreconditionError("universe must be nonempty");
  const auto& syms = signature->symbols();
  if (tables.size() != syms.size())
    throw PreconditionError("expected " + std::to_string(syms.size()) + " operation tables, got " +
                            std::to_string(tables.size()));
  for (std::size_t s = 0; s < syms.size(); ++s) {
    const std::size_t expected = power(size, syms[s].arity);
    if (tables[s].size() != expected)
      throw PreconditionError("table of '" + syms[s].name + "' has " +
                              std::to_string(tables[s].size()) + " entries, expected " +
                              std::to_string(expected));
    for (Element v : tables[s])
      if (v >= size)
        throw PreconditionError("table of '" + syms[s].name + "' has entry " + std::to_string(v) +
                                " outside 0.." + std::to_string(size - 1));
  }
  auto data = std::make_shared<Data>();
  data->signature = std::move(signature);
  data->size = size;
  data->tables = std::move(tables);
  data->name = std::move(name);
  for (const auto& t : data->signature->zero_terms())
    data->zero.push_back(eval_closed(*data->signature, size, data->tables, t));
  for (const auto& t : data->signature->one_terms())
    data->one.push_back(eval_closed(*data->signature, size, data->tables, t));
  data_ = std::move(data);
}

Element FiniteAlgebra::apply(std::size_t symbol, std::span<const Element> args) const {
  return data_->tables[symbol][table_index(data_->size, args)];
}

bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const {
  return data_->signature == other.data_->signature ||
         *data_->signature == *other.data_->signature;
}

FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
  return FiniteAlgebra(data_->signature, data_->size, data_->tables, std::move(name));
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.data_ == b.data_) return true;
  return a.size() == b.size() && a.same_signature(b) && a.data_->tables == b.data_->tables;
}

Element eval_term(const FiniteAlgebra& a, const Term& t, const Env& env) {
  if (t.is_variable()) {
    auto it = env.find(t.name);
    if (it == env.end()) throw PreconditionError("unbound variable '" + t.name + "'");
    if (it->second >= a.size())
      throw PreconditionError("variable '" + t.name + "' bound outside the universe");
    return it->second;
  }
  const auto& syms = a.signature().symbols();
  if (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= syms.size() ||
      syms[static_cast<std::size_t>(t.symbol)].name != t.name)
    throw PreconditionError("unknown operation symbol '" + t.name + "'");
  if (syms[static_cast<std::size_t>(t.symbol)].arity != t.args.size())
    throw PreconditionError("arity mismatch for '" + t.name + "'");
  Element buf[8];
  std::vector<Element> heap;
  std::span<Element> args;
  if (t.args.size() <= 8) {
    args = std::span<Element>(buf, t.args.size());
  } else {
    heap.resize(t.args.size());
    args = heap;
  }
  for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(a, t.args[i], env);
  return a.apply(static_cast<std::size_t>(t.symbol), args);
}

Tuple Homomorphism::operator()(std::span<const Element> xs) const {
  Tuple out;
  out.reserve(xs.size());
  for (Element x : xs) out.push_back(map[x]);
  return out;
}

Homomorphism Homomorphism::checked(FiniteAlgebra source, FiniteAlgebra target,
                                   std::vector<Element> map) {
  auto check = is_homomorphism(source, target, map);
  if (!check) throw PreconditionError("not a homomorphism: " + check.message);
  return Homomorphism{std::move(source), std::move(target), std::move(map)};
}

Homomorphism Homomorphism::identity(const FiniteAlgebra& a) {
  std::vector<Element> map(a.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<Element>(i);
  return Homomorphism{a, a, std::move(map)};
}

bool Homomorphism::injective() const {
  std::vector<bool> hit(target.size(), false);
  for (Element y : map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool Homomorphism::surjective() const {
  std::vector<bool> hit(target.size(), false);
  for (Element y : map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (!(f.target == g.source)) throw PreconditionError("composition of non-matching maps");
  std::vector<Element> map(f.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = g.map[f.map[i]];
  return Homomorphism{f.source, g.target, std::move(map)};
}

HomomorphismCheck is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                  std::span<const Element> map) {
  HomomorphismCheck out;
  if (!a.same_signature(b)) {
    out.message = "signature mismatch";
    return out;
  }
  if (map.size() != a.size()) {
    out.message = "map has " + std::to_string(map.size()) + " entries, source has " +
                  std::to_string(a.size()) + " elements";
    return out;
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] >= b.size()) {
      out.message = "image of " + std::to_string(i) + " outside target";
      return out;
    }
  }
  const auto& syms = a.signature().symbols();
  std::vector<Element> image;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    bool ok = true;
    for_each_tuple(a.size(), syms[s].arity, [&](std::span<const Element> args) {
      if (!ok) return;
      image.assign(args.size(), 0);
      for (std::size_t i = 0; i < args.size(); ++i) image[i] = map[args[i]];
      if (map[a.apply(s, args)] != b.apply(s, image)) {
        ok = false;
        out.violation = HomomorphismViolation{s, std::vector<Element>(args.begin(), args.end())};
      }
    });
    if (!ok) {
      std::string args;
      for (Element x : out.violation->args) args += (args.empty() ? "" : ",") + std::to_string(x);
      out.message = "'" + syms[s].name + "' at (" + args + ")";
      return out;
    }
  }
  out.holds = true;
  return out;
}

Product product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!a.same_signature(b)) throw PreconditionError("product of algebras with different signatures");
  const std::size_t n = a.size() * b.size();
  const auto& syms = a.signature().symbols();
  std::vector<std::vector<Element>> tables(syms.size());
  std::vector<Element> left, right;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    tables[s].reserve(power(n, syms[s].arity));
    for_each_tuple(n, syms[s].arity, [&](std::span<const Element> args) {
      left.resize(args.size());
      right.resize(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) {
        left[i] = static_cast<Element>(args[i] / b.size());
        right[i] = static_cast<Element>(args[i] % b.size());
      }
      tables[s].push_back(pair_index(b, a.apply(s, left), b.apply(s, right)));
    });
  }
  std::string name = a.name().empty() || b.name().empty() ? "" : a.name() + "x" + b.name();
  FiniteAlgebra p(a.signature_ptr(), n, std::move(tables), std::move(name));
  std::vector<Element> pi1(n), pi2(n);
  for (std::size_t x = 0; x < n; ++x) {
    pi1[x] = static_cast<Element>(x / b.size());
    pi2[x] = static_cast<Element>(x % b.size());
  }
  return Product{p, Homomorphism{p, a, std::move(pi1)}, Homomorphism{p, b, std::move(pi2)}};
}

std::optional<HomomorphismViolation> compatibility_violation(const FiniteAlgebra& a,
                                                             const Partition& p) {
  if (p.size() != a.size()) return HomomorphismViolation{};
  const auto& syms = a.signature().symbols();
  std::vector<Element> moved;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    std::optional<HomomorphismViolation> bad;
    for_each_tuple(a.size(), syms[s].arity, [&](std::span<const Element> args) {
      if (bad) return;
      const Element value = a.apply(s, args);
      for (std::size_t pos = 0; pos < args.size(); ++pos) {
        if (p.rep(args[pos]) == args[pos]) continue;
        moved.assign(args.begin(), args.end());
        moved[pos] = p.rep(args[pos]);
        if (!p.related(value, a.apply(s, moved))) {
          bad = HomomorphismViolation{s, std::vector<Element>(args.begin(), args.end())};
          return;
        }
      }
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

bool is_compatible(const FiniteAlgebra& a, const Partition& p) {
  return p.size() == a.size() && !compatibility_violation(a, p);
}

Quotient quotient(const FiniteAlgebra& a, const Partition& theta) {
  if (theta.size() != a.size()) throw PreconditionError("partition size does not match algebra");
  if (auto bad = compatibility_violation(a, theta))
    throw PreconditionError("partition " + theta.to_string() + " is not compatible with '" +
                            a.signature().symbol(bad->symbol).name + "'");
  const auto index = theta.block_index();
  const auto blocks = theta.blocks();
  const std::size_t m = blocks.size();
  const auto& syms = a.signature().symbols();
  std::vector<std::vector<Element>> tables(syms.size());
  std::vector<Element> reps;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    for_each_tuple(m, syms[s].arity, [&](std::span<const Element> args) {
      reps.resize(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) reps[i] = blocks[args[i]].front();
      tables[s].push_back(index[a.apply(s, reps)]);
    });
  }
  std::string name = a.name().empty() ? "" : a.name() + "/" + theta.to_string();
  FiniteAlgebra q(a.signature_ptr(), m, std::move(tables), std::move(name));
  return Quotient{q, Homomorphism{a, q, index}};
}

namespace {

/// Per-element invariants preserved by isomorphisms.
std::vector<std::vector<std::size_t>> element_profiles(const FiniteAlgebra& a) {
  const auto& syms = a.signature().symbols();
  std::vector<std::vector<std::size_t>> profile(a.size());
  std::vector<Element> diag;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    std::vector<std::size_t> hits(a.size(), 0);
    for (Element v : a.table(s)) ++hits[v];
    for (std::size_t x = 0; x < a.size(); ++x) {
      profile[x].push_back(hits[x]);
      if (syms[s].arity > 0) {
        diag.assign(syms[s].arity, static_cast<Element>(x));
        profile[x].push_back(a.apply(s, diag) == x ? 1 : 0);
      }
    }
  }
  return profile;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteAlgebra& a, const FiniteAlgebra& b)
      : a_(a), b_(b), img_(a.size(), kUnset), used_(b.size(), false),
        pa_(element_profiles(a)), pb_(element_profiles(b)) {}

  std::optional<std::vector<Element>> run() {
    std::vector<Element> trail;
    if (!propagate(trail)) return std::nullopt;
    if (search()) {
      std::vector<Element> out(img_.begin(), img_.end());
      return out;
    }
    return std::nullopt;
  }

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);

  bool assign(Element x, Element y, std::vector<Element>& trail) {
    if (img_[x] != kUnset) return img_[x] == y;
    if (used_[y] || pa_[x] != pb_[y]) return false;
    img_[x] = y;
    used_[y] = true;
    trail.push_back(x);
    return true;
  }

  void undo(std::vector<Element>& trail) {
    for (Element x : trail) {
      used_[img_[x]] = false;
      img_[x] = kUnset;
    }
    trail.clear();
  }

  /// Forces images of operation values on mapped arguments until stable.
  bool propagate(std::vector<Element>& trail) {
    const auto& syms = a_.signature().symbols();
    std::vector<Element> image;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < syms.size(); ++s) {
        bool ok = true;
        for_each_tuple(a_.size(), syms[s].arity, [&](std::span<const Element> args) {
          if (!ok) return;
          image.resize(args.size());
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (img_[args[i]] == kUnset) return;
            image[i] = img_[args[i]];
          }
          const Element r = a_.apply(s, args);
          const Element t = b_.apply(s, image);
          const bool was_unset = img_[r] == kUnset;
          if (!assign(r, t, trail)) ok = false;
          else if (was_unset) changed = true;
        });
        if (!ok) return false;
      }
    }
    return true;
  }

  bool search() {
    Element x = 0;
    while (x < img_.size() && img_[x] != kUnset) ++x;
    if (x == img_.size()) return is_homomorphism(a_, b_, img_).holds;
    for (Element y = 0; y < b_.size(); ++y) {
      std::vector<Element> trail;
      if (assign(x, y, trail) && propagate(trail) && search()) return true;
      undo(trail);
    }
    return false;
  }

  const FiniteAlgebra& a_;
  const FiniteAlgebra& b_;
  std::vector<Element> img_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> pa_;
  std::vector<std::vector<std::size_t>> pb_;
};

}  // namespace

std::optional<Homomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!a.same_signature(b) || a.size() != b.size()) return std::nullopt;
  IsoSearch search(a, b);
  auto map = search.run();
  if (!map) return std::nullopt;
  return Homomorphism{a, b, std::move(*map)};
}

std::vector<Element> subuniverse_generate(const FiniteAlgebra& a, std::span<const Element> seed) {
  std::vector<bool> in(a.size(), false);
  for (Element x : seed) {
    if (x >= a.size()) throw PreconditionError("seed element out of range");
    in[x] = true;
  }
  const auto& syms = a.signature().symbols();
  bool changed = true;
  std::vector<Element> members, args;
  while (changed) {
    changed = false;
    members.clear();
    for (std::size_t x = 0; x < a.size(); ++x)
      if (in[x]) members.push_back(static_cast<Element>(x));
    for (std::size_t s = 0; s < syms.size(); ++s) {
      if (syms[s].arity > 0 && members.empty()) continue;
      for_each_tuple(members.size(), syms[s].arity, [&](std::span<const Element> idx) {
        args.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) args[i] = members[idx[i]];
        const Element r = a.apply(s, args);
        if (!in[r]) {
          in[r] = true;
          changed = true;
        }
      });
    }
  }
  std::vector<Element> out;
  for (std::size_t x = 0; x < a.size(); ++x)
    if (in[x]) out.push_back(static_cast<Element>(x));
  return out;
}

FiniteAlgebra trivial_algebra(SignaturePtr signature, std::string name) {
  std::vector<std::vector<Element>> tables;
  for (std::size_t s = 0; s < signature->symbols().size(); ++s) tables.push_back({0});
  return FiniteAlgebra(std::move(signature), 1, std::move(tables), std::move(name));
}

}  // namespace ua
