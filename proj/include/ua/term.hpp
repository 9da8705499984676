#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ua {

/// A term: a variable, or an operation symbol applied to arity-many subterms.
/// `symbol` indexes the owning Signature's symbol list; it is -1 for variables.
struct Term {
  std::string name;
  int symbol = -1;
  std::vector<Term> args;

  static Term variable(std::string name) { return Term{std::move(name), -1, {}}; }

  bool is_variable() const { return symbol < 0; }
  bool is_closed() const;
  std::size_t depth() const;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Prefix syntax: `name(arg,...)`, bare `name` for variables and constants.
std::string to_string(const Term& t);

void collect_variables(const Term& t, std::set<std::string>& out);
bool contains_variable(const Term& t, const std::string& name);

/// Simultaneous substitution of variables.
Term substitute(const Term& t, const std::map<std::string, Term>& bindings);

struct OperationSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OperationSymbol&, const OperationSymbol&) = default;
};

/// Operation symbols plus the designated constant tuples 0 and 1 given as
/// closed terms. A signature built with `symbols_only` has tuple length 0 and is
/// only good for parsing terms.
class Signature {
 public:
  Signature(std::vector<OperationSymbol> symbols, std::vector<Term> zero_terms,
            std::vector<Term> one_terms);

  static Signature symbols_only(std::vector<OperationSymbol> symbols);

  const std::vector<OperationSymbol>& symbols() const { return symbols_; }
  const OperationSymbol& symbol(std::size_t i) const { return symbols_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

  std::size_t tuple_length() const { return zero_.size(); }
  const std::vector<Term>& zero_terms() const { return zero_; }
  const std::vector<Term>& one_terms() const { return one_; }

  /// Builds an application node, checking the symbol exists and the arity matches.
  Term apply(const std::string& name, std::vector<Term> args) const;
  Term constant(const std::string& name) const { return apply(name, {}); }

  /// Throws unless every application node names a symbol of this signature
  /// with the right arity and index.
  void validate(const Term& t) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.symbols_ == b.symbols_ && a.zero_ == b.zero_ && a.one_ == b.one_;
  }

 private:
  Signature() = default;

  std::vector<OperationSymbol> symbols_;
  std::map<std::string, std::size_t> index_;
  std::vector<Term> zero_;
  std::vector<Term> one_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace ua
