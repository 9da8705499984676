#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/center.hpp"
#include "ua/report.hpp"

namespace ua {

class PierceSheaf;

/// A finite bounded distributive lattice with the coherent coverage.
class FiniteLatticeSite {
 public:
  /// Throws PreconditionError unless the tables form a bounded distributive lattice.
  FiniteLatticeSite(std::size_t size, std::vector<std::size_t> meet,
                    std::vector<std::size_t> join, std::string name = {});

  /// 0 < 1 < ... < n-1.
  static FiniteLatticeSite chain(std::size_t n);
  /// Subsets of an m-element set, encoded as bitmasks.
  static FiniteLatticeSite boolean(std::size_t m);
  static FiniteLatticeSite from_center(const CenterAlgebra& z);

  std::size_t size() const { return size_; }
  const std::string& name() const { return name_; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size_ + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size_ + b]; }
  bool leq(std::size_t a, std::size_t b) const { return meet(a, b) == a; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  /// Pairs (a, b) with a ∨ b = d and a ∧ b = ⊥, ordered by a.
  std::vector<std::pair<std::size_t, std::size_t>> partitions_of(std::size_t d) const;
  /// Elements of ↓d having a complement in ↓d.
  std::vector<std::size_t> complemented_below(std::size_t d) const;

 private:
  std::size_t size_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::string name_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

/// A presheaf of finite sets on a lattice: X(d) = {0..count(d)-1} and maps
/// X(d) → X(c) for c ≤ d.
class SetSheaf {
 public:
  SetSheaf(const FiniteLatticeSite& site, std::vector<std::size_t> counts);

  const FiniteLatticeSite& site() const { return site_; }
  std::size_t count(std::size_t d) const { return counts_.at(d); }
  std::size_t restrict(std::size_t d, std::size_t c, std::size_t x) const;
  void set_restriction(std::size_t d, std::size_t c, std::vector<std::size_t> map);
  const std::vector<std::size_t>& restriction(std::size_t d, std::size_t c) const;

  /// Optional human-readable labels per section.
  std::vector<std::vector<std::string>> labels;

 private:
  FiniteLatticeSite site_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<std::size_t>> maps_;  // [d * n + c]
  std::vector<bool> present_;
};

/// Functoriality, |X(⊥)| = 1 and the gluing condition for every binary cover.
CheckReport check_sheaf(const SetSheaf& x);

/// X(d) = {⋆}.
SetSheaf terminal_sheaf(const FiniteLatticeSite& site);

/// (X+Y)(d) = {(a,b,x,y) : a∨b=d, a∧b=⊥, x∈X(a), y∈Y(b)} with
/// (a,b,x,y)·c = (a∧c, b∧c, x·(a∧c), y·(b∧c)). Throws unless X, Y and the
/// result are sheaves.
SetSheaf sheaf_coproduct(const FiniteLatticeSite& site, const SetSheaf& x, const SetSheaf& y);

/// 1 + 1.
SetSheaf partition_object(const FiniteLatticeSite& site);

/// A presheaf of algebras over a common signature.
struct AlgebraSheaf {
  FiniteLatticeSite site;
  std::vector<FiniteAlgebra> sections;
  std::vector<std::vector<Element>> restrictions;  // [d * n + c], empty unless c ≤ d

  const std::vector<Element>& restriction(std::size_t d, std::size_t c) const {
    return restrictions.at(d * site.size() + c);
  }
  SetSheaf underlying() const;
};

/// Same algebra on every element except the bottom, which gets the trivial
/// algebra. Restrictions are identities and the unique map to the bottom.
AlgebraSheaf constant_sheaf(const FiniteLatticeSite& site, const FiniteAlgebra& a);

/// The Pierce sheaf as a sheaf on the lattice of its center.
AlgebraSheaf to_algebra_sheaf(const PierceSheaf& sheaf);

struct RepresentationReport {
  bool representation = false;
  CheckReport checks;
  /// alpha[d][i] = complemented element of ↓d matched by the i-th central
  /// element of X(d), when unique.
  std::vector<std::vector<std::optional<std::size_t>>> alpha;
};

/// (1) X(d) trivial ⇒ d = ⊥; (2) α_d: Z(X(d)) → Z(↓d) bijective and natural
/// in d. Throws PreconditionError when sections differ in signature or a
/// restriction is not a homomorphism.
RepresentationReport check_representation(const AlgebraSheaf& x, CenterOptions opts = {});

}  // namespace ua
