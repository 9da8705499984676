#pragma once

#include <span>

#include "ua/congruence.hpp"

namespace ua {

/// The square A → A/θ(S), A → B → B/θ(f(S)) with its mediating map.
struct QuotientPushout {
  Quotient source_quotient;  // A/θ^A(S) with ν_S
  Quotient target_quotient;  // B/θ^B(f(S)) with ν_{f(S)}
  Homomorphism induced;      // A/θ^A(S) → B/θ^B(f(S))
  bool commutes = false;
};

/// Throws PreconditionError on out-of-range pairs.
QuotientPushout pushout_of_quotients(const Homomorphism& f, std::span<const ElementPair> pairs);

}  // namespace ua
