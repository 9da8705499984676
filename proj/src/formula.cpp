#include "ua/formula.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

namespace ua {

using Kind = Formula::Kind;

Formula equation(Term lhs, Term rhs) {
  Formula f;
  f.kind = Kind::Equation;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return f;
}

namespace {

Formula junction(Kind kind, std::vector<Formula> parts) {
  if (parts.empty()) throw PreconditionError("empty conjunction or disjunction");
  if (parts.size() == 1) return std::move(parts.front());
  Formula f;
  f.kind = kind;
  f.children = std::move(parts);
  return f;
}

Formula quantifier(Kind kind, std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  Formula f;
  f.kind = kind;
  f.variables = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

}  // namespace

Formula conjunction(std::vector<Formula> parts) { return junction(Kind::And, std::move(parts)); }
Formula disjunction(std::vector<Formula> parts) { return junction(Kind::Or, std::move(parts)); }

Formula negation(Formula body) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(body));
  return f;
}

Formula implication(Formula premise, Formula conclusion) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(premise));
  f.children.push_back(std::move(conclusion));
  return f;
}

Formula exists(std::vector<std::string> vars, Formula body) {
  return quantifier(Kind::Exists, std::move(vars), std::move(body));
}

Formula forall(std::vector<std::string> vars, Formula body) {
  return quantifier(Kind::Forall, std::move(vars), std::move(body));
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind) {
    case Kind::Equation:
      collect_variables(f.lhs, out);
      collect_variables(f.rhs, out);
      break;
    case Kind::Exists:
    case Kind::Forall:
      out = free_variables(f.children.front());
      for (const auto& v : f.variables) out.erase(v);
      break;
    default:
      for (const auto& c : f.children) {
        auto sub = free_variables(c);
        out.insert(sub.begin(), sub.end());
      }
  }
  return out;
}

namespace {

/// Existential quantifiers only in positive position, universal only in
/// negative position.
bool existential_at(const Formula& f, bool positive) {
  switch (f.kind) {
    case Kind::Equation:
      return true;
    case Kind::And:
    case Kind::Or:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const Formula& c) { return existential_at(c, positive); });
    case Kind::Not:
      return existential_at(f.children[0], !positive);
    case Kind::Implies:
      return existential_at(f.children[0], !positive) && existential_at(f.children[1], positive);
    case Kind::Exists:
      return positive && existential_at(f.children[0], positive);
    case Kind::Forall:
      return !positive && existential_at(f.children[0], positive);
  }
  return false;
}

enum class Level { Formula, Implication, Disjunction, Conjunction, Atom };

Level level_of(const Formula& f) {
  switch (f.kind) {
    case Kind::Equation:
    case Kind::Not:
      return Level::Atom;
    case Kind::And:
      return Level::Conjunction;
    case Kind::Or:
      return Level::Disjunction;
    case Kind::Implies:
      return Level::Implication;
    default:
      return Level::Formula;
  }
}

void print(const Formula& f, Level slot, std::string& out);

void print_child(const Formula& f, Level slot, std::string& out) {
  if (level_of(f) < slot) {
    out += "(";
    print(f, Level::Formula, out);
    out += ")";
  } else {
    print(f, slot, out);
  }
}

void print(const Formula& f, Level, std::string& out) {
  switch (f.kind) {
    case Kind::Equation:
      out += to_string(f.lhs) + " = " + to_string(f.rhs);
      break;
    case Kind::Not:
      out += "!";
      print_child(f.children[0], Level::Atom, out);
      break;
    case Kind::And:
    case Kind::Or: {
      const bool conj = f.kind == Kind::And;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += conj ? " & " : " | ";
        // A nested junction of the same kind needs parentheses to survive a
        // round trip, since the parser flattens.
        const Level need = conj ? Level::Atom : Level::Conjunction;
        print_child(f.children[i], need, out);
      }
      break;
    }
    case Kind::Implies:
      print_child(f.children[0], Level::Disjunction, out);
      out += " -> ";
      print_child(f.children[1], Level::Disjunction, out);
      break;
    case Kind::Exists:
    case Kind::Forall:
      out += f.kind == Kind::Exists ? "exists" : "forall";
      for (const auto& v : f.variables) out += " " + v;
      out += " . ";
      print(f.children[0], Level::Formula, out);
      break;
  }
}

}  // namespace

bool is_existential(const Formula& f) { return existential_at(f, true); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, Level::Formula, out);
  return out;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& bindings) {
  switch (f.kind) {
    case Kind::Equation:
      return equation(substitute(f.lhs, bindings), substitute(f.rhs, bindings));
    case Kind::Exists:
    case Kind::Forall: {
      const auto body_free = free_variables(f.children[0]);
      std::map<std::string, Term> inner;
      std::set<std::string> incoming;
      for (const auto& [name, term] : bindings) {
        if (std::find(f.variables.begin(), f.variables.end(), name) != f.variables.end()) continue;
        if (!body_free.count(name)) continue;
        inner.emplace(name, term);
        collect_variables(term, incoming);
      }
      std::vector<std::string> vars = f.variables;
      std::set<std::string> avoid = incoming;
      avoid.insert(body_free.begin(), body_free.end());
      avoid.insert(vars.begin(), vars.end());
      for (auto& v : vars) {
        if (!incoming.count(v)) continue;
        std::string renamed = fresh_name(v, avoid);
        avoid.insert(renamed);
        inner.emplace(v, Term::variable(renamed));
        v = renamed;
      }
      Formula out = f;
      out.variables = std::move(vars);
      out.children[0] = substitute(f.children[0], inner);
      return out;
    }
    default: {
      Formula out = f;
      for (auto& c : out.children) c = substitute(c, bindings);
      return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Eq, Dot, Amp, Bar, Bang, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool reserved(char c) {
  switch (c) {
    case '(': case ')': case ',': case '=': case '.': case '&': case '|': case '!': case '#':
      return true;
    default:
      return false;
  }
}

bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (space(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    if (reserved(c)) {
      static constexpr std::array<std::pair<char, Tok>, 8> table{{{'(', Tok::LParen},
                                                                   {')', Tok::RParen},
                                                                   {',', Tok::Comma},
                                                                   {'=', Tok::Eq},
                                                                   {'.', Tok::Dot},
                                                                   {'&', Tok::Amp},
                                                                   {'|', Tok::Bar},
                                                                   {'!', Tok::Bang}}};
      for (auto [ch, kind] : table)
        if (ch == c) out.push_back({kind, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !space(text[j]) && !reserved(text[j]) &&
           !(text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>'))
      ++j;
    out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, cl});
    advance(j - i);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Eq: return "'='";
    case Tok::Dot: return "'.'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool keyword(const std::string& s) { return s == "forall" || s == "exists"; }

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula formula() {
    if (peek().kind == Tok::Ident && keyword(peek().text)) {
      const Kind kind = next().text == "forall" ? Kind::Forall : Kind::Exists;
      std::vector<std::string> vars;
      while (peek().kind == Tok::Ident) {
        const Token& t = next();
        if (keyword(t.text) || sig_.find(t.text))
          fail(t, "'" + t.text + "' cannot be a bound variable");
        vars.push_back(t.text);
      }
      if (vars.empty()) fail(peek(), "expected variable after quantifier");
      expect(Tok::Dot);
      Formula body = formula();
      Formula f;
      f.kind = kind;
      f.variables = std::move(vars);
      f.children.push_back(std::move(body));
      return f;
    }
    return implication_level();
  }

  Term term() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, std::string("expected term, found ") + describe(t.kind));
    next();
    if (keyword(t.text)) fail(t, "quantifier keyword '" + t.text + "' used as a term");
    const auto sym = sig_.find(t.text);
    if (peek().kind == Tok::LParen) {
      if (!sym) fail(t, "unknown operation symbol '" + t.text + "'");
      next();
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(term());
        }
      }
      expect(Tok::RParen);
      const std::size_t arity = sig_.symbol(*sym).arity;
      if (args.size() != arity)
        fail(t, "'" + t.text + "' expects " + std::to_string(arity) + " argument(s), got " +
                    std::to_string(args.size()));
      return Term{t.text, static_cast<int>(*sym), std::move(args)};
    }
    if (sym) {
      const std::size_t arity = sig_.symbol(*sym).arity;
      if (arity != 0)
        fail(t, "'" + t.text + "' expects " + std::to_string(arity) + " argument(s)");
      return Term{t.text, static_cast<int>(*sym), {}};
    }
    return Term::variable(t.text);
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  void expect(Tok kind) {
    if (peek().kind != kind)
      fail(peek(), std::string("expected ") + describe(kind) + ", found " + describe(peek().kind));
    next();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

 private:
  Formula implication_level() {
    Formula lhs = disjunction_level();
    if (peek().kind != Tok::Arrow) return lhs;
    next();
    Formula rhs = disjunction_level();
    if (peek().kind == Tok::Arrow) fail(peek(), "chained '->' needs parentheses");
    return implication(std::move(lhs), std::move(rhs));
  }

  Formula disjunction_level() {
    std::vector<Formula> parts{conjunction_level()};
    while (peek().kind == Tok::Bar) {
      next();
      parts.push_back(conjunction_level());
    }
    return disjunction(std::move(parts));
  }

  Formula conjunction_level() {
    std::vector<Formula> parts{atom()};
    while (peek().kind == Tok::Amp) {
      next();
      parts.push_back(atom());
    }
    return conjunction(std::move(parts));
  }

  Formula atom() {
    if (peek().kind == Tok::Bang) {
      next();
      return negation(atom());
    }
    if (peek().kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (peek().kind == Tok::Ident && keyword(peek().text))
      fail(peek(), "quantifier must be parenthesized here");
    Term lhs = term();
    expect(Tok::Eq);
    Term rhs = term();
    return equation(std::move(lhs), std::move(rhs));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  if (p.peek().kind != Tok::End)
    Parser::fail(p.peek(), std::string("unexpected ") + describe(p.peek().kind));
  return f;
}

Term parse_term(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Term t = p.term();
  if (p.peek().kind != Tok::End)
    Parser::fail(p.peek(), std::string("unexpected ") + describe(p.peek().kind));
  return t;
}

std::vector<Term> parse_term_list(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  std::vector<Term> out;
  while (p.peek().kind != Tok::End) out.push_back(p.term());
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

struct CompiledFormula::Impl {
  struct CTerm {
    int slot = -1;  // variable slot, or -1 for an application
    std::size_t symbol = 0;
    std::vector<CTerm> args;
  };

  struct Node {
    Kind kind = Kind::Equation;
    CTerm lhs, rhs;
    std::vector<Node> children;
    std::vector<std::size_t> slots;  // quantified slots
    // Quantifier blocks: conjuncts checked as soon as their last block
    // variable is bound. For Forall they are premise conjuncts.
    std::vector<std::pair<std::size_t, const Node*>> staged;
    const Node* conclusion = nullptr;
    std::set<std::size_t> free;  // free slots
  };

  FiniteAlgebra algebra;
  Node root;
  std::size_t slot_count = 0;
  std::size_t parameter_count = 0;

  CTerm compile_term(const Term& t, const std::map<std::string, std::size_t>& scope,
                     std::set<std::size_t>& free) const {
    CTerm out;
    if (t.is_variable()) {
      auto it = scope.find(t.name);
      if (it == scope.end()) throw PreconditionError("unbound variable '" + t.name + "'");
      out.slot = static_cast<int>(it->second);
      free.insert(it->second);
      return out;
    }
    algebra.signature().validate(t);
    out.symbol = static_cast<std::size_t>(t.symbol);
    for (const auto& a : t.args) out.args.push_back(compile_term(a, scope, free));
    return out;
  }

  Node compile(const Formula& f, std::map<std::string, std::size_t> scope) {
    Node n;
    n.kind = f.kind;
    switch (f.kind) {
      case Kind::Equation:
        n.lhs = compile_term(f.lhs, scope, n.free);
        n.rhs = compile_term(f.rhs, scope, n.free);
        break;
      case Kind::Exists:
      case Kind::Forall: {
        for (const auto& v : f.variables) {
          n.slots.push_back(slot_count);
          scope[v] = slot_count++;
        }
        n.children.push_back(compile(f.children[0], scope));
        n.free = n.children[0].free;
        for (std::size_t s : n.slots) n.free.erase(s);
        break;
      }
      default:
        for (const auto& c : f.children) {
          n.children.push_back(compile(c, scope));
          n.free.insert(n.children.back().free.begin(), n.children.back().free.end());
        }
    }
    return n;
  }

  /// Number of block variables that must be bound before `n` can be decided.
  static std::size_t stage_of(const Node& n, const std::vector<std::size_t>& block) {
    std::size_t stage = 0;
    for (std::size_t i = 0; i < block.size(); ++i)
      if (n.free.count(block[i])) stage = i + 1;
    return stage;
  }

  static void plan(Node& n) {
    for (auto& c : n.children) plan(c);
    if (n.kind != Kind::Exists && n.kind != Kind::Forall) return;
    const Node& body = n.children[0];
    if (n.kind == Kind::Exists) {
      if (body.kind == Kind::And)
        for (const auto& c : body.children) n.staged.emplace_back(stage_of(c, n.slots), &c);
      else
        n.staged.emplace_back(stage_of(body, n.slots), &body);
    } else if (body.kind == Kind::Implies) {
      const Node& premise = body.children[0];
      if (premise.kind == Kind::And)
        for (const auto& c : premise.children) n.staged.emplace_back(stage_of(c, n.slots), &c);
      else
        n.staged.emplace_back(stage_of(premise, n.slots), &premise);
      n.conclusion = &body.children[1];
    } else {
      n.conclusion = &body;
    }
  }

  Element eval_term(const CTerm& t, std::vector<Element>& slots) const {
    if (t.slot >= 0) return slots[static_cast<std::size_t>(t.slot)];
    std::array<Element, 8> small{};
    std::vector<Element> large;
    std::span<Element> args;
    if (t.args.size() <= small.size()) {
      args = std::span<Element>(small.data(), t.args.size());
    } else {
      large.resize(t.args.size());
      args = large;
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(t.args[i], slots);
    return algebra.apply(t.symbol, args);
  }

  bool staged_hold(const Node& n, std::size_t stage, std::vector<Element>& slots) const {
    for (const auto& [s, c] : n.staged)
      if (s == stage && !eval(*c, slots)) return false;
    return true;
  }

  bool search(const Node& n, std::size_t depth, std::vector<Element>& slots) const {
    const std::size_t m = n.slots.size();
    const bool ex = n.kind == Kind::Exists;
    if (depth == m) return ex ? true : eval(*n.conclusion, slots);
    const std::size_t size = algebra.size();
    for (Element v = 0; v < size; ++v) {
      slots[n.slots[depth]] = v;
      if (!staged_hold(n, depth + 1, slots)) continue;
      const bool r = search(n, depth + 1, slots);
      if (ex && r) return true;
      if (!ex && !r) return false;
    }
    return !ex;
  }

  bool eval(const Node& n, std::vector<Element>& slots) const {
    switch (n.kind) {
      case Kind::Equation:
        return eval_term(n.lhs, slots) == eval_term(n.rhs, slots);
      case Kind::And:
        for (const auto& c : n.children)
          if (!eval(c, slots)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : n.children)
          if (eval(c, slots)) return true;
        return false;
      case Kind::Not:
        return !eval(n.children[0], slots);
      case Kind::Implies:
        return !eval(n.children[0], slots) || eval(n.children[1], slots);
      case Kind::Exists:
      case Kind::Forall:
        if (!staged_hold(n, 0, slots)) return n.kind == Kind::Forall;
        return search(n, 0, slots);
    }
    return false;
  }
};

CompiledFormula::CompiledFormula(const FiniteAlgebra& a, const Formula& f,
                                 std::vector<std::string> parameters)
    : impl_(std::make_unique<Impl>(Impl{a, {}, 0, 0})) {
  std::map<std::string, std::size_t> scope;
  for (const auto& p : parameters) {
    if (scope.count(p)) throw PreconditionError("duplicate parameter '" + p + "'");
    scope[p] = impl_->slot_count++;
  }
  impl_->parameter_count = parameters.size();
  impl_->root = impl_->compile(f, scope);
  Impl::plan(impl_->root);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::operator()(std::span<const Element> values) const {
  if (values.size() != impl_->parameter_count)
    throw PreconditionError("expected " + std::to_string(impl_->parameter_count) + " values");
  std::vector<Element> slots(impl_->slot_count, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= impl_->algebra.size()) throw PreconditionError("value out of range");
    slots[i] = values[i];
  }
  return impl_->eval(impl_->root, slots);
}

bool eval_formula(const FiniteAlgebra& a, const Formula& f, const Env& env) {
  std::vector<std::string> names;
  std::vector<Element> values;
  for (const auto& v : free_variables(f)) {
    auto it = env.find(v);
    if (it == env.end()) throw PreconditionError("unbound free variable '" + v + "'");
    names.push_back(v);
    values.push_back(it->second);
  }
  return CompiledFormula(a, f, std::move(names))(values);
}

}  // namespace ua
