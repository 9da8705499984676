#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ua/error.hpp"
#include "ua/partition.hpp"
#include "ua/term.hpp"

namespace ua {

/// A finite algebra on {0..n-1}: one table per operation symbol, arguments in
/// row-major order (last argument varies fastest). Copies share the immutable
/// table storage.
class FiniteAlgebra {
 public:
  FiniteAlgebra(SignaturePtr signature, std::size_t size,
                std::vector<std::vector<Element>> tables, std::string name = {});

  const Signature& signature() const { return *data_->signature; }
  const SignaturePtr& signature_ptr() const { return data_->signature; }
  std::size_t size() const { return data_->size; }
  const std::string& name() const { return data_->name; }

  std::span<const Element> table(std::size_t symbol) const { return data_->tables[symbol]; }
  Element apply(std::size_t symbol, std::span<const Element> args) const;

  const Tuple& zero() const { return data_->zero; }
  const Tuple& one() const { return data_->one; }
  std::size_t tuple_length() const { return data_->zero.size(); }

  /// n > 1 and 0 = 1. Loadable, but every center analysis refuses it.
  bool degenerate_constants() const { return size() > 1 && zero() == one(); }

  bool same_signature(const FiniteAlgebra& other) const;
  FiniteAlgebra renamed(std::string name) const;

  /// Same signature and identical tables.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);

 private:
  struct Data {
    SignaturePtr signature;
    std::size_t size = 0;
    std::vector<std::vector<Element>> tables;
    std::string name;
    Tuple zero;
    Tuple one;
  };

  std::shared_ptr<const Data> data_;
};

/// Index of (args...) in a row-major table over a universe of size n.
std::size_t table_index(std::size_t n, std::span<const Element> args);

/// Calls `fn(args)` for every tuple in {0..n-1}^arity in row-major order.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
  std::vector<Element> args(arity, 0);
  if (n == 0 && arity > 0) return;
  for (;;) {
    fn(std::span<const Element>(args));
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++args[pos] < n) break;
      args[pos] = 0;
      if (pos == 0) return;
    }
    if (arity == 0) return;
  }
}

using Env = std::map<std::string, Element>;

/// Bottom-up evaluation. Throws on unbound variables or malformed terms.
Element eval_term(const FiniteAlgebra& a, const Term& t, const Env& env = {});

struct Homomorphism {
  FiniteAlgebra source;
  FiniteAlgebra target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }
  Tuple operator()(std::span<const Element> xs) const;

  /// Validates totality, range and compatibility; throws PreconditionError.
  static Homomorphism checked(FiniteAlgebra source, FiniteAlgebra target,
                              std::vector<Element> map);
  static Homomorphism identity(const FiniteAlgebra& a);

  bool injective() const;
  bool surjective() const;
  Partition kernel() const { return Partition::kernel(map); }
};

/// g ∘ f.
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

struct HomomorphismViolation {
  std::size_t symbol = 0;
  std::vector<Element> args;
};

struct HomomorphismCheck {
  bool holds = false;
  std::optional<HomomorphismViolation> violation;
  std::string message;

  explicit operator bool() const { return holds; }
};

HomomorphismCheck is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                  std::span<const Element> map);

struct Product {
  FiniteAlgebra algebra;
  Homomorphism first;
  Homomorphism second;
};

/// Componentwise product; (a, b) is encoded as a * |B| + b.
Product product(const FiniteAlgebra& a, const FiniteAlgebra& b);

inline Element pair_index(const FiniteAlgebra& b, Element x, Element y) {
  return static_cast<Element>(x * b.size() + y);
}

struct Quotient {
  FiniteAlgebra algebra;
  Homomorphism canonical;
};

/// First violation of operation compatibility, if any.
std::optional<HomomorphismViolation> compatibility_violation(const FiniteAlgebra& a,
                                                             const Partition& p);
bool is_compatible(const FiniteAlgebra& a, const Partition& p);

/// A/θ with blocks numbered by increasing least representative. Throws
/// PreconditionError if θ is not operation-compatible.
Quotient quotient(const FiniteAlgebra& a, const Partition& theta);

/// Backtracking isomorphism search. Candidates are tried in increasing order,
/// forced images (constants and operation closure) are propagated first.
std::optional<Homomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Least subuniverse containing `seed` and all constants, sorted.
std::vector<Element> subuniverse_generate(const FiniteAlgebra& a, std::span<const Element> seed);

/// The one-element algebra of the given signature.
FiniteAlgebra trivial_algebra(SignaturePtr signature, std::string name = "1");

}  // namespace ua
