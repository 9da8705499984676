#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ua/congruence.hpp"
#include "ua/pushout.hpp"
#include "ua/report.hpp"

namespace ua {

/// A central tuple e⃗ with its complementary factor pair:
/// e⃗ ≡ 0⃗ (theta0) and e⃗ ≡ 1⃗ (theta1).
struct CentralElement {
  Tuple tuple;
  Congruence theta0;
  Congruence theta1;
};

struct CenterOptions {
  std::size_t congruence_cap = kDefaultCongruenceCap;
};

/// One central element per complementary factor pair, sorted by tuple.
/// Throws DegenerateConstants when n > 1 and 0⃗ = 1⃗, CenterViolation when a
/// system has no unique solution or two pairs give the same tuple.
std::vector<CentralElement> central_elements(const FiniteAlgebra& a, CenterOptions opts = {});

/// The Boolean algebra Z(A). Elements are indexed by position in `elements()`.
class CenterAlgebra {
 public:
  /// Throws CenterViolation when a defining system is not uniquely solvable
  /// inside Z(A).
  explicit CenterAlgebra(const FiniteAlgebra& a, CenterOptions opts = {});

  const FiniteAlgebra& algebra() const { return algebra_; }
  std::size_t congruence_cap() const { return congruence_cap_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<CentralElement>& elements() const { return elements_; }
  const CentralElement& element(std::size_t i) const { return elements_.at(i); }
  const Tuple& tuple(std::size_t i) const { return elements_.at(i).tuple; }
  std::optional<std::size_t> index_of(std::span<const Element> tuple) const;

  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  std::size_t complement(std::size_t i) const { return complement_[i]; }
  /// e ≤ f iff θ0(e) ⊆ θ0(f).
  bool leq(std::size_t i, std::size_t j) const;

  std::vector<std::size_t> atoms() const;
  /// Covering pairs (lower, upper).
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;

  /// e ⋄ f: f is the complement of e.
  bool complementary(std::size_t i, std::size_t j) const { return complement_[i] == j; }

 private:
  FiniteAlgebra algebra_;
  std::vector<CentralElement> elements_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::vector<std::size_t> complement_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  std::size_t congruence_cap_ = kDefaultCongruenceCap;
};

CenterAlgebra center_algebra(const FiniteAlgebra& a, CenterOptions opts = {});

/// Boolean algebra laws on the tables.
CheckReport check_boolean_laws(const CenterAlgebra& z);

/// Instance-level RexDFC/LexDFC, principal-congruence identities for meet and
/// join, the meet/join characterization by factor congruences, DP uniqueness,
/// and the three equivalent forms of the order.
CheckReport check_center_axioms(const CenterAlgebra& z);

/// g(e) = θ0(e) and h(θ) = the unique e with e ≡ 0 (θ), e ≡ 1 (θ*), composed
/// both ways over Z(A) and FC(A).
CheckReport check_center_bijection(const CenterAlgebra& z, CenterOptions opts = {});

struct HomCenterReport {
  bool sc = false;
  bool csc = false;
  bool boolean_hom = false;
  /// First element of Z(A) whose image is not central, if any.
  std::optional<Tuple> sc_witness;
  std::optional<std::pair<Tuple, Tuple>> csc_witness;
  std::string boolean_witness;
};

HomCenterReport hom_center_check(const Homomorphism& f, CenterOptions opts = {});

/// e⃗ ∈ Z(A) with e⃗ ≡ z⃗ (θ) and e⃗ ≡ 1⃗ (θ*). Throws PreconditionError when θ
/// has no factor complement or z⃗/θ is not central in A/θ.
CentralElement lift_central(const FiniteAlgebra& a, const Congruence& theta,
                            std::span<const Element> z, CenterOptions opts = {});

/// The pushout of the two projection kernels of A × B is trivial.
bool check_codisjoint(const FiniteAlgebra& a, const FiniteAlgebra& b);

struct ProductStabilityReport {
  bool stable = false;
  Tuple e;
  Tuple complement;
  QuotientPushout left;   // B/θ(1⃗, f(complement))
  QuotientPushout right;  // B/θ(1⃗, f(e))
  std::optional<Homomorphism> isomorphism;  // B → P1 × P2
};

/// B ≅ B/θ(1⃗, f(e⃗ᶜ)) × B/θ(1⃗, f(e⃗)), quotients built as pushouts along f.
ProductStabilityReport check_product_stability(const Homomorphism& f,
                                               std::span<const Element> e,
                                               CenterOptions opts = {});

/// Pairs (1_j, e_j).
std::vector<ElementPair> one_pairs(const FiniteAlgebra& a, std::span<const Element> e);
/// Pairs (0_j, e_j).
std::vector<ElementPair> zero_pairs(const FiniteAlgebra& a, std::span<const Element> e);

std::string tuple_string(std::span<const Element> t);

}  // namespace ua
