#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ua/algebra.hpp"

namespace ua {

/// An operation-compatible partition of an algebra's universe.
class Congruence {
 public:
  /// Throws PreconditionError unless `p` is compatible with `a`.
  Congruence(FiniteAlgebra a, Partition p);

  static Congruence identity(const FiniteAlgebra& a);
  static Congruence universal(const FiniteAlgebra& a);

  const FiniteAlgebra& algebra() const { return algebra_; }
  const Partition& partition() const { return partition_; }
  std::size_t size() const { return partition_.size(); }
  bool related(Element a, Element b) const { return partition_.related(a, b); }
  bool related(std::span<const Element> a, std::span<const Element> b) const {
    return partition_.related(a, b);
  }
  bool refines(const Congruence& other) const { return partition_.refines(other.partition_); }
  bool is_identity() const { return partition_.is_identity(); }
  bool is_universal() const { return partition_.is_universal(); }
  std::string to_string() const { return partition_.to_string(); }

  friend bool operator==(const Congruence& a, const Congruence& b) {
    return a.partition_ == b.partition_;
  }
  friend auto operator<=>(const Congruence& a, const Congruence& b) {
    return a.partition_ <=> b.partition_;
  }

 private:
  struct Unchecked {};
  Congruence(FiniteAlgebra a, Partition p, Unchecked)
      : algebra_(std::move(a)), partition_(std::move(p)) {}

  friend Congruence make_congruence_unchecked(FiniteAlgebra a, Partition p);

  FiniteAlgebra algebra_;
  Partition partition_;
};

Congruence make_congruence_unchecked(FiniteAlgebra a, Partition p);

// ---------------------------------------------------------------------------
// Maltsev certificates

/// One link of a Maltsev chain: the unary polynomial `polynomial`, a term over
/// the slot variable `x` and witness variables w1..wm bound to `constants`,
/// applied to generator pair `generator`. `value` is the chain value after the
/// step (t(d) for odd steps, t(c) for even steps).
struct PolynomialStep {
  Term polynomial;
  std::size_t generator = 0;
  std::vector<Element> constants;
  Element value = 0;
};

inline constexpr const char* kSlotVariable = "x";
std::string witness_name(std::size_t i);  // 1-based: witness_name(1) == "w1"

struct MaltsevCertificate {
  Element a = 0;
  Element b = 0;
  Tuple c;
  Tuple d;
  std::vector<PolynomialStep> steps;  // odd length

  std::size_t length() const { return steps.size(); }
};

/// Merge record of a principal-congruence computation. Every merge is a single
/// polynomial image (p(c_j), p(d_j)) of a generator pair; the merges form a
/// spanning forest of the generated congruence.
class Provenance {
 public:
  struct Edge {
    Element from = 0;  // p(c_j)
    Element to = 0;    // p(d_j)
    std::size_t generator = 0;
    Term polynomial;
    std::vector<Element> constants;
  };

  Provenance() = default;
  Provenance(Tuple c, Tuple d) : c_(std::move(c)), d_(std::move(d)) {}

  const Tuple& c() const { return c_; }
  const Tuple& d() const { return d_; }
  const std::vector<Edge>& edges() const { return edges_; }
  void add(Edge e) { edges_.push_back(std::move(e)); }

 private:
  Tuple c_;
  Tuple d_;
  std::vector<Edge> edges_;
};

struct PrincipalResult {
  Congruence congruence;
  std::optional<Provenance> provenance;
};

/// Least congruence containing the pairs of S, by closing the merge edges
/// under one-step unary translations. With `want_certificates` each merge
/// records its polynomial.
PrincipalResult principal_congruence(const FiniteAlgebra& a, std::span<const ElementPair> pairs,
                                     bool want_certificates = false);

Congruence theta(const FiniteAlgebra& a, std::span<const ElementPair> pairs);
Congruence theta(const FiniteAlgebra& a, Element x, Element y);
/// θ(a⃗, b⃗): generated by the componentwise pairs.
Congruence theta(const FiniteAlgebra& a, std::span<const Element> xs, std::span<const Element> ys);

/// Throws PreconditionError if (a, b) is not in the generated congruence.
MaltsevCertificate extract_certificate(const FiniteAlgebra& alg, const Provenance& provenance,
                                       ElementPair pair);

struct CertificateCheck {
  bool valid = false;
  std::string message;
  explicit operator bool() const { return valid; }
};

/// Replays the chain equations by term evaluation only. Throws on malformed
/// descriptors (unknown symbols, unbound witnesses, bad generator index).
CertificateCheck verify_certificate(const FiniteAlgebra& alg, const MaltsevCertificate& cert);

/// Numbered chain lines `i: t(x; w) = value  [generator j, c->d]`.
std::string to_string(const MaltsevCertificate& cert);

// ---------------------------------------------------------------------------
// Lattice of congruences

inline constexpr std::size_t kDefaultCongruenceCap = 12;

/// All congruences, sorted by representative array. Throws SizeCapExceeded
/// when |A| > cap.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a,
                                        std::size_t cap = kDefaultCongruenceCap);

Congruence congruence_join(const Congruence& x, const Congruence& y);
Congruence congruence_meet(const Congruence& x, const Congruence& y);

bool permutes(const Congruence& x, const Congruence& y);

struct SystemConstraint {
  Congruence congruence;
  Element element;
};

/// Every x with x ≡ x_i (θ_i) for all constraints, increasing.
std::vector<Element> solve_system(const FiniteAlgebra& a,
                                  std::span<const SystemConstraint> constraints);

/// θ ∩ δ = Δ and θ ∘ δ = ∇.
bool is_factor_pair(const Congruence& x, const Congruence& y);

struct FactorPair {
  Congruence first;
  Congruence second;
};

std::vector<FactorPair> factor_pairs(const FiniteAlgebra& a,
                                     std::size_t cap = kDefaultCongruenceCap);

/// θ₁ × θ₂ on the product A × B.
Partition product_partition(const Partition& left, const Partition& right);

struct FactoredCongruence {
  Congruence left;
  Congruence right;
};

/// θ = θ₁ × θ₂ for the projected relations, or nothing. Throws unless θ lives
/// on product(A, B).
std::optional<FactoredCongruence> factorize_product_congruence(const FiniteAlgebra& a,
                                                               const FiniteAlgebra& b,
                                                               const Congruence& theta);

struct FhpCheck {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<ElementPair, ElementPair>> counterexample;
};

/// θ^{A×B}((a,b),(c,d)) = θ^A(a,c) × θ^B(b,d) for all pairs of the product.
FhpCheck check_fhp_instance(const FiniteAlgebra& a, const FiniteAlgebra& b);

}  // namespace ua
