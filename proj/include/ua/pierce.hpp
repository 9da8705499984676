#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ua/center.hpp"

namespace ua {

/// e⃗ ↦ A/θ(1⃗, e⃗) over Z(A), with restrictions Ā(e⃗) → Ā(f⃗) for f⃗ ≤ e⃗.
class PierceSheaf {
 public:
  const CenterAlgebra& base() const { return base_; }
  const FiniteAlgebra& algebra() const { return base_.algebra(); }

  /// Ā(e) for the center element with index e.
  const Quotient& section(std::size_t e) const { return sections_.at(e); }
  /// Ā(from) → Ā(to); requires to ≤ from.
  Homomorphism restriction(std::size_t from, std::size_t to) const;

  /// Global sections Ā(1⃗).
  const Quotient& global_sections() const { return sections_.at(base_.top()); }

 private:
  PierceSheaf(CenterAlgebra base, std::vector<Quotient> sections)
      : base_(std::move(base)), sections_(std::move(sections)) {}

  friend PierceSheaf build_pierce(const FiniteAlgebra& a, CenterOptions opts);

  CenterAlgebra base_;
  std::vector<Quotient> sections_;
};

/// Throws PreconditionError when θ_{1,e} ≠ θ(1⃗, e⃗) for some e⃗ (the sheaf
/// sections would not be the factor quotients).
PierceSheaf build_pierce(const FiniteAlgebra& a, CenterOptions opts = {});

/// Functoriality and the Ā(1⃗) ≅ A, Ā(0⃗) = 1 invariants.
CheckReport check_presheaf_laws(const PierceSheaf& sheaf);

struct GluingResult {
  bool holds = false;
  std::size_t pairs_checked = 0;
  std::string witness;
};

/// For every x ∈ Ā(e), y ∈ Ā(f) agreeing on Ā(e∧f), exactly one z ∈ Ā(d)
/// restricts to both. Throws PreconditionError if d ≠ e ∨ f.
GluingResult check_sheaf_condition(const PierceSheaf& sheaf, std::size_t e, std::size_t f,
                                   std::size_t d);

/// Every binary cover of every element.
CheckReport check_all_covers(const PierceSheaf& sheaf);

/// Upward closure of an atom of the finite center.
struct Ultrafilter {
  std::size_t atom = 0;
  std::vector<std::size_t> members;  // increasing indices
};

std::vector<Ultrafilter> ultrafilters(const CenterAlgebra& z);
bool is_ultrafilter(const CenterAlgebra& z, const std::vector<std::size_t>& members);

struct Stalk {
  Ultrafilter point;
  Congruence theta;       // θ(U)
  Quotient fiber;         // A/θ(U)
  bool collapse_verified = false;  // θ(U) = θ(1⃗, atom)
  bool squares_commute = false;
};

/// A/θ(U) with θ(U) the join of θ(1⃗, e⃗) over e⃗ ∈ U. Throws on an invalid
/// ultrafilter.
Stalk stalk(const PierceSheaf& sheaf, const Ultrafilter& u);

/// 0⃗ ≠ 1⃗ and Z(A) = {0⃗, 1⃗}.
bool is_connected(const FiniteAlgebra& a, CenterOptions opts = {});

struct Decomposition {
  std::vector<Stalk> stalks;
  FiniteAlgebra product;                 // ∏ stalks, folded left
  std::vector<Element> canonical;        // A → ∏ stalks
  bool homomorphism = false;
  bool injective = false;
  bool surjective = false;
  bool subdirect = false;                // each projection onto a stalk is onto
  std::vector<bool> stalk_connected;
  /// Set when some stalk is not connected.
  std::optional<std::string> csc_diagnostic;

  bool isomorphism() const { return homomorphism && injective && surjective; }
};

Decomposition decompose(const PierceSheaf& sheaf, CenterOptions opts = {});
Decomposition decompose(const FiniteAlgebra& a, CenterOptions opts = {});

/// Left fold of products; encoding is row-major in the given order.
FiniteAlgebra product_of(const std::vector<FiniteAlgebra>& factors);

}  // namespace ua
