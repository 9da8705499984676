#include "ua/term.hpp"

#include <algorithm>

#include "ua/error.hpp"

namespace ua {

bool Term::is_closed() const {
  if (is_variable()) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_closed(); });
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return args.empty() ? 0 : d + 1;
}

std::string to_string(const Term& t) {
  if (t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

bool contains_variable(const Term& t, const std::string& name) {
  if (t.is_variable()) return t.name == name;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term& a) { return contains_variable(a, name); });
}

Term substitute(const Term& t, const std::map<std::string, Term>& bindings) {
  if (t.is_variable()) {
    auto it = bindings.find(t.name);
    return it == bindings.end() ? t : it->second;
  }
  Term out{t.name, t.symbol, {}};
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(substitute(a, bindings));
  return out;
}

Signature Signature::symbols_only(std::vector<OperationSymbol> symbols) {
  Signature s;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].name.empty()) throw PreconditionError("operation symbol with empty name");
    if (!s.index_.emplace(symbols[i].name, i).second)
      throw PreconditionError("duplicate operation symbol '" + symbols[i].name + "'");
  }
  s.symbols_ = std::move(symbols);
  return s;
}

Signature::Signature(std::vector<OperationSymbol> symbols, std::vector<Term> zero_terms,
                     std::vector<Term> one_terms)
    : Signature(symbols_only(std::move(symbols))) {
  if (zero_terms.empty()) throw PreconditionError("tuple length must be positive");
  if (zero_terms.size() != one_terms.size())
    throw PreconditionError("zero and one tuples differ in length (" +
                            std::to_string(zero_terms.size()) + " vs " +
                            std::to_string(one_terms.size()) + ")");
  for (const auto* list : {&zero_terms, &one_terms}) {
    for (const auto& t : *list) {
      validate(t);
      if (!t.is_closed())
        throw PreconditionError("constant term '" + to_string(t) + "' is not closed");
    }
  }
  zero_ = std::move(zero_terms);
  one_ = std::move(one_terms);
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Term Signature::apply(const std::string& name, std::vector<Term> args) const {
  auto idx = find(name);
  if (!idx) throw PreconditionError("unknown operation symbol '" + name + "'");
  if (symbols_[*idx].arity != args.size())
    throw PreconditionError("symbol '" + name + "' has arity " +
                            std::to_string(symbols_[*idx].arity) + ", applied to " +
                            std::to_string(args.size()) + " arguments");
  return Term{name, static_cast<int>(*idx), std::move(args)};
}

void Signature::validate(const Term& t) const {
  if (t.is_variable()) return;
  auto idx = find(t.name);
  if (!idx || static_cast<int>(*idx) != t.symbol)
    throw PreconditionError("term uses unknown operation symbol '" + t.name + "'");
  if (symbols_[*idx].arity != t.args.size())
    throw PreconditionError("arity mismatch for '" + t.name + "'");
  for (const auto& a : t.args) validate(a);
}

}  // namespace ua
