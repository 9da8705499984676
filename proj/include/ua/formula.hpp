#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ua/algebra.hpp"

namespace ua {

/// First-order formulas over a signature. And/Or carry two or more children,
/// Not one, Implies two (premise, conclusion), quantifiers one body.
struct Formula {
  enum class Kind { Equation, And, Or, Not, Implies, Exists, Forall };

  Kind kind = Kind::Equation;
  Term lhs;
  Term rhs;
  std::vector<Formula> children;
  std::vector<std::string> variables;

  friend bool operator==(const Formula&, const Formula&) = default;
};

Formula equation(Term lhs, Term rhs);
/// A single conjunct is returned unchanged; an empty list is rejected.
Formula conjunction(std::vector<Formula> parts);
Formula disjunction(std::vector<Formula> parts);
Formula negation(Formula f);
Formula implication(Formula premise, Formula conclusion);
Formula exists(std::vector<std::string> vars, Formula body);
Formula forall(std::vector<std::string> vars, Formula body);

std::set<std::string> free_variables(const Formula& f);
bool is_existential(const Formula& f);

/// Prints in the accepted grammar; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Simultaneous capture-avoiding substitution of free variables.
Formula substitute(const Formula& f, const std::map<std::string, Term>& bindings);

/// Grammar:
///   formula := quant | impl
///   quant   := ("forall" | "exists") var+ "." formula
///   impl    := disj ("->" disj)?
///   disj    := conj ("|" conj)*
///   conj    := atom ("&" atom)*
///   atom    := "!" atom | "(" formula ")" | term "=" term
/// Terms are prefix `name(arg,...)`; a bare name is a constant if the
/// signature has a 0-ary symbol of that name, otherwise a variable.
Formula parse_formula(std::string_view text, const Signature& sig);
Term parse_term(std::string_view text, const Signature& sig);
/// Whitespace-separated closed or open terms, e.g. the tail of a `zero` line.
std::vector<Term> parse_term_list(std::string_view text, const Signature& sig);

/// Finite Tarskian satisfaction; quantifiers range over the universe.
/// Throws PreconditionError on unbound free variables.
bool eval_formula(const FiniteAlgebra& a, const Formula& f, const Env& env = {});

/// A formula compiled against an algebra with its free variables bound to
/// positional parameters, for repeated evaluation.
class CompiledFormula {
 public:
  /// Every free variable of `f` must appear in `parameters`.
  CompiledFormula(const FiniteAlgebra& a, const Formula& f, std::vector<std::string> parameters);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  bool operator()(std::span<const Element> values) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ua
