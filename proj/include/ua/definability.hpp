#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ua/center.hpp"
#include "ua/formula.hpp"

namespace ua {

/// Names of the parameter variables: z1..zk and u1..uk.
std::string z_name(std::size_t j);  // 0-based j -> "z{j+1}"
std::string u_name(std::size_t j);
std::string v_name(std::size_t j);

struct DefinabilityFailure {
  std::size_t pair_index = 0;
  /// (a,c), (b,d) as product elements and their coordinates.
  Element left = 0;
  Element right = 0;
  ElementPair left_coords;
  ElementPair right_coords;
  bool formula_value = false;
};

struct DefinabilityReport {
  bool passed = true;
  std::size_t quadruples_checked = 0;
  std::optional<DefinabilityFailure> counterexample;
  std::string message;
};

enum class DefinabilityMode {
  Right,  // φ([0⃗,1⃗], (a,c), (b,d)) ⇔ c = d   (defines θ_{1,e})
  Left,   // φ([0⃗,1⃗], (a,c), (b,d)) ⇔ a = b   (defines θ_{0,e})
};

/// φ(x, y, z1..zk) checked on A × B for every listed pair. Throws
/// PreconditionError when φ has free variables outside x, y, z1..zk.
DefinabilityReport defines_theta1(const Formula& phi,
                                  std::span<const std::pair<FiniteAlgebra, FiniteAlgebra>> corpus,
                                  DefinabilityMode mode = DefinabilityMode::Right);

/// The formulas τ_r, τ_s, τ_t, τ_i, τ_p, τ_k on (z⃗,u⃗), the same on (u⃗,z⃗),
/// and τ_f per operation symbol, in that order. Free variables are z1..zk,
/// u1..uk.
std::vector<Formula> sigma_set(const Formula& phi, const Signature& sig);

/// Names matching `sigma_set` positions ("tau_r(z,u)", ..., "tau_f[+]").
std::vector<std::string> sigma_labels(const Signature& sig);

struct SigmaCheck {
  bool holds = false;
  /// Semantic e⃗ ⋄ f⃗ from the center, when computable.
  std::optional<bool> semantic;
  bool agrees = true;
  /// Label of the first Σ formula that failed.
  std::string first_failure;
};

/// A ⊨ σ[e⃗, f⃗] for every σ ∈ Σ, cross-validated against the center.
SigmaCheck check_sigma(const FiniteAlgebra& a, std::span<const Element> e,
                       std::span<const Element> f, const Formula& phi,
                       CenterOptions opts = {});

struct ConnectedAxiomsCheck {
  bool holds = false;
  bool constants_distinct = false;
  /// Tuple pairs satisfying Σ.
  std::vector<std::pair<Tuple, Tuple>> sigma_pairs;
  std::optional<std::pair<Tuple, Tuple>> witness;
};

/// 0⃗ ≠ 1⃗ and ∀e⃗,f⃗ (⋀Σ(e⃗,f⃗) → (e⃗=0⃗ ∧ f⃗=1⃗) ∨ (e⃗=1⃗ ∧ f⃗=0⃗)).
ConnectedAxiomsCheck check_connected_axioms(const FiniteAlgebra& a, const Formula& phi);

/// ∃w⃗ (x ≈ t1(u⃗,w⃗) ∧ ⋀_{i even} t_i(u⃗,w⃗) ≈ t_{i+1}(u⃗,w⃗)
///      ∧ ⋀_{i odd} t_i(v⃗,w⃗) ≈ t_{i+1}(v⃗,w⃗) ∧ t_k(v⃗,w⃗) ≈ y)
/// with t_i over generator slots u1..un and witnesses w1..wm.
struct PcfSchema {
  std::size_t generators = 0;
  std::vector<Term> terms;                    // t_1..t_k over u-slots and w's
  std::vector<std::vector<std::size_t>> witnesses_of;  // witness indices (0-based) used by t_i
  std::size_t witness_count = 0;
  std::vector<Element> emitted_witness;       // λ⃗ from the certificate

  std::size_t length() const { return terms.size(); }

  /// The formula π(x, y, u⃗, v⃗).
  Formula formula() const;
  /// The quantifier-free matrix with w⃗ free.
  Formula matrix() const;

  /// Exact existential evaluation π(a,b,c⃗,d⃗), scanning witnesses step by step
  /// (witness blocks of distinct steps are disjoint).
  bool holds(const FiniteAlgebra& alg, Element a, Element b, std::span<const Element> c,
             std::span<const Element> d) const;
  /// Row-major n×n table of all (a, b) with π(a, b, c⃗, d⃗); one pass per step.
  std::vector<bool> relation(const FiniteAlgebra& alg, std::span<const Element> c,
                             std::span<const Element> d) const;
  /// The matrix at the emitted witness.
  bool holds_with_emitted(const FiniteAlgebra& alg, Element a, Element b,
                          std::span<const Element> c, std::span<const Element> d) const;
};

/// Throws PreconditionError if the certificate does not verify.
PcfSchema certificate_to_formula(const FiniteAlgebra& alg, const MaltsevCertificate& cert);

}  // namespace ua
