#include "ua/definability.hpp"

#include <algorithm>
#include <map>

namespace ua {

std::string z_name(std::size_t j) { return "z" + std::to_string(j + 1); }
std::string u_name(std::size_t j) { return "u" + std::to_string(j + 1); }
std::string v_name(std::size_t j) { return "v" + std::to_string(j + 1); }

namespace {

std::vector<Term> variables(const std::string& prefix, std::size_t k) {
  std::vector<Term> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(Term::variable(prefix + std::to_string(j + 1)));
  return out;
}

/// φ(s, t, w⃗).
Formula instantiate(const Formula& phi, Term s, Term t, const std::vector<Term>& params) {
  std::map<std::string, Term> b{{"x", std::move(s)}, {"y", std::move(t)}};
  for (std::size_t j = 0; j < params.size(); ++j) b.emplace(z_name(j), params[j]);
  return substitute(phi, b);
}

Term var(const std::string& n) { return Term::variable(n); }

void check_phi_variables(const Formula& phi, std::size_t k) {
  for (const auto& v : free_variables(phi)) {
    if (v == "x" || v == "y") continue;
    bool ok = false;
    for (std::size_t j = 0; j < k; ++j)
      if (v == z_name(j)) ok = true;
    if (!ok)
      throw PreconditionError("formula variable '" + v + "' is not one of x, y, z1..z" +
                              std::to_string(k));
  }
}

std::vector<Formula> block(const Formula& phi, const Signature& sig, const std::vector<Term>& z,
                           const std::vector<Term>& u) {
  const Term x = var("x"), y = var("y"), v = var("v");
  std::vector<Formula> out;
  out.push_back(forall({"x"}, instantiate(phi, x, x, z)));
  out.push_back(forall({"x", "y"}, implication(instantiate(phi, x, y, z), instantiate(phi, y, x, z))));
  out.push_back(forall({"x", "y", "v"},
                       implication(conjunction({instantiate(phi, x, v, z), instantiate(phi, v, y, z)}),
                                   instantiate(phi, x, y, z))));
  out.push_back(forall({"x", "y"},
                       implication(conjunction({instantiate(phi, x, y, z), instantiate(phi, x, y, u)}),
                                   equation(x, y))));
  out.push_back(forall({"x", "y"},
                       exists({"v"}, conjunction({instantiate(phi, x, v, z), instantiate(phi, v, y, u)}))));
  std::vector<Formula> k;
  for (std::size_t j = 0; j < z.size(); ++j) k.push_back(instantiate(phi, sig.one_terms()[j], z[j], z));
  for (std::size_t j = 0; j < z.size(); ++j) k.push_back(instantiate(phi, sig.zero_terms()[j], u[j], z));
  out.push_back(conjunction(std::move(k)));
  return out;
}

}  // namespace

std::vector<Formula> sigma_set(const Formula& phi, const Signature& sig) {
  const std::size_t k = sig.tuple_length();
  if (k == 0) throw PreconditionError("signature has no designated constants");
  check_phi_variables(phi, k);
  const auto z = variables("z", k), u = variables("u", k);
  auto out = block(phi, sig, z, u);
  auto swapped = block(phi, sig, u, z);
  out.insert(out.end(), swapped.begin(), swapped.end());
  for (std::size_t s = 0; s < sig.symbols().size(); ++s) {
    const auto& sym = sig.symbol(s);
    std::vector<std::string> bound;
    std::vector<Term> ls, vs;
    std::vector<Formula> premise;
    for (std::size_t a = 0; a < sym.arity; ++a) {
      ls.push_back(var("l" + std::to_string(a + 1)));
      vs.push_back(var(v_name(a)));
      bound.push_back(ls.back().name);
    }
    for (std::size_t a = 0; a < sym.arity; ++a) bound.push_back(vs[a].name);
    for (std::size_t a = 0; a < sym.arity; ++a) premise.push_back(instantiate(phi, ls[a], vs[a], z));
    Formula conclusion = instantiate(phi, Term{sym.name, static_cast<int>(s), ls},
                                     Term{sym.name, static_cast<int>(s), vs}, z);
    if (premise.empty())
      out.push_back(std::move(conclusion));
    else
      out.push_back(forall(bound, implication(conjunction(std::move(premise)), std::move(conclusion))));
  }
  return out;
}

std::vector<std::string> sigma_labels(const Signature& sig) {
  std::vector<std::string> out;
  for (const char* order : {"(z,u)", "(u,z)"})
    for (const char* t : {"r", "s", "t", "i", "p", "k"})
      out.push_back(std::string("tau_") + t + order);
  for (const auto& s : sig.symbols()) out.push_back("tau_f[" + s.name + "]");
  return out;
}

DefinabilityReport defines_theta1(const Formula& phi,
                                  std::span<const std::pair<FiniteAlgebra, FiniteAlgebra>> corpus,
                                  DefinabilityMode mode) {
  DefinabilityReport report;
  if (corpus.empty()) throw PreconditionError("empty corpus");
  const auto& sig = corpus.front().first.signature();
  const std::size_t k = sig.tuple_length();
  check_phi_variables(phi, k);
  std::vector<std::string> params{"x", "y"};
  for (std::size_t j = 0; j < k; ++j) params.push_back(z_name(j));

  for (std::size_t i = 0; i < corpus.size() && report.passed; ++i) {
    const auto& [a, b] = corpus[i];
    if (!a.same_signature(corpus.front().first) || !b.same_signature(corpus.front().first))
      throw PreconditionError("corpus algebras do not share a signature");
    const auto prod = product(a, b);
    const CompiledFormula f(prod.algebra, phi, params);
    std::vector<Element> values(2 + k);
    for (std::size_t j = 0; j < k; ++j) values[2 + j] = pair_index(b, a.zero()[j], b.one()[j]);
    const std::size_t n = prod.algebra.size(), nb = b.size();
    for (Element p = 0; p < n && report.passed; ++p) {
      for (Element q = 0; q < n; ++q) {
        values[0] = p;
        values[1] = q;
        const bool got = f(values);
        const bool want = mode == DefinabilityMode::Right ? p % nb == q % nb : p / nb == q / nb;
        ++report.quadruples_checked;
        if (got != want) {
          report.passed = false;
          report.counterexample = DefinabilityFailure{
              i, p, q,
              {static_cast<Element>(p / nb), static_cast<Element>(p % nb)},
              {static_cast<Element>(q / nb), static_cast<Element>(q % nb)},
              got};
          const auto& cx = *report.counterexample;
          report.message = "on " + a.name() + " x " + b.name() + ": phi((" +
                           std::to_string(cx.left_coords.first) + "," +
                           std::to_string(cx.left_coords.second) + "),(" +
                           std::to_string(cx.right_coords.first) + "," +
                           std::to_string(cx.right_coords.second) + ")) is " +
                           (got ? "true" : "false");
          break;
        }
      }
    }
  }
  if (report.passed)
    report.message = std::to_string(report.quadruples_checked) + " quadruples over " +
                     std::to_string(corpus.size()) + " pairs";
  return report;
}

namespace {

std::vector<CompiledFormula> compile_sigma(const FiniteAlgebra& a, const Formula& phi) {
  const std::size_t k = a.tuple_length();
  std::vector<std::string> params;
  for (std::size_t j = 0; j < k; ++j) params.push_back(z_name(j));
  for (std::size_t j = 0; j < k; ++j) params.push_back(u_name(j));
  std::vector<CompiledFormula> out;
  for (const auto& s : sigma_set(phi, a.signature())) out.emplace_back(a, s, params);
  return out;
}

}  // namespace

SigmaCheck check_sigma(const FiniteAlgebra& a, std::span<const Element> e,
                       std::span<const Element> f, const Formula& phi, CenterOptions opts) {
  const std::size_t k = a.tuple_length();
  if (e.size() != k || f.size() != k) throw PreconditionError("tuple length mismatch");
  for (Element x : e)
    if (x >= a.size()) throw PreconditionError("element out of range");
  for (Element x : f)
    if (x >= a.size()) throw PreconditionError("element out of range");
  const auto sigma = compile_sigma(a, phi);
  const auto labels = sigma_labels(a.signature());
  std::vector<Element> values(e.begin(), e.end());
  values.insert(values.end(), f.begin(), f.end());

  SigmaCheck out;
  out.holds = true;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (!sigma[i](values)) {
      out.holds = false;
      out.first_failure = labels[i];
      break;
    }
  try {
    const CenterAlgebra z(a, opts);
    const auto ie = z.index_of(e), jf = z.index_of(f);
    out.semantic = ie && jf && z.complementary(*ie, *jf);
  } catch (const Error&) {
    out.semantic.reset();
  }
  out.agrees = !out.semantic || *out.semantic == out.holds;
  return out;
}

ConnectedAxiomsCheck check_connected_axioms(const FiniteAlgebra& a, const Formula& phi) {
  ConnectedAxiomsCheck out;
  const std::size_t k = a.tuple_length();
  out.constants_distinct = a.zero() != a.one();
  const auto sigma = compile_sigma(a, phi);
  for_each_tuple(a.size(), 2 * k, [&](std::span<const Element> values) {
    for (const auto& s : sigma)
      if (!s(values)) return;
    Tuple e(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k));
    Tuple f(values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
    const bool trivial = (e == a.zero() && f == a.one()) || (e == a.one() && f == a.zero());
    if (!trivial && !out.witness) out.witness = std::make_pair(e, f);
    out.sigma_pairs.emplace_back(std::move(e), std::move(f));
  });
  out.holds = out.constants_distinct && !out.witness;
  return out;
}

// ---------------------------------------------------------------------------
// Principal congruence formulas

Formula PcfSchema::matrix() const {
  if (terms.empty() || terms.size() % 2 == 0) throw PreconditionError("chain length must be odd");
  std::map<std::string, Term> to_v;
  for (std::size_t j = 0; j < generators; ++j) to_v.emplace(u_name(j), var(v_name(j)));
  auto at_v = [&](const Term& t) { return substitute(t, to_v); };
  std::vector<Formula> parts;
  parts.push_back(equation(var("x"), terms.front()));
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (i % 2 == 0)
      parts.push_back(equation(terms[i - 1], terms[i]));
    else
      parts.push_back(equation(at_v(terms[i - 1]), at_v(terms[i])));
  }
  parts.push_back(equation(at_v(terms.back()), var("y")));
  return conjunction(std::move(parts));
}

Formula PcfSchema::formula() const {
  std::vector<std::string> ws;
  for (std::size_t w = 0; w < witness_count; ++w) ws.push_back(witness_name(w + 1));
  return exists(std::move(ws), matrix());
}

namespace {

/// A term whose variables are resolved to positions in a value vector.
struct SlotTerm {
  int slot = -1;
  std::size_t symbol = 0;
  std::vector<SlotTerm> args;
};

SlotTerm resolve(const Term& t, const std::map<std::string, std::size_t>& slots) {
  SlotTerm out;
  if (t.is_variable()) {
    auto it = slots.find(t.name);
    if (it == slots.end()) throw PreconditionError("unexpected variable '" + t.name + "' in schema");
    out.slot = static_cast<int>(it->second);
    return out;
  }
  out.symbol = static_cast<std::size_t>(t.symbol);
  for (const auto& a : t.args) out.args.push_back(resolve(a, slots));
  return out;
}

Element eval_slots(const FiniteAlgebra& alg, const SlotTerm& t, const std::vector<Element>& v) {
  if (t.slot >= 0) return v[static_cast<std::size_t>(t.slot)];
  std::vector<Element> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_slots(alg, a, v));
  return alg.apply(t.symbol, args);
}

}  // namespace

std::vector<bool> PcfSchema::relation(const FiniteAlgebra& alg, std::span<const Element> c,
                                      std::span<const Element> d) const {
  if (c.size() != generators || d.size() != generators)
    throw PreconditionError("generator tuples must have length " + std::to_string(generators));
  const std::size_t n = alg.size();
  std::map<std::string, std::size_t> slots;
  for (std::size_t j = 0; j < generators; ++j) slots[u_name(j)] = j;
  for (std::size_t w = 0; w < witness_count; ++w) slots[witness_name(w + 1)] = generators + w;

  // reach[a * n + x]: x is a possible chain value after the current step from a.
  std::vector<bool> reach(n * n, false);
  for (std::size_t a = 0; a < n; ++a) reach[a * n + a] = true;
  std::vector<Element> values(generators + witness_count, 0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const SlotTerm t = resolve(terms[i], slots);
    const bool odd = i % 2 == 0;  // 1-based odd step: enter at c, leave at d
    const auto entry = odd ? c : d, exit = odd ? d : c;
    std::vector<bool> step(n * n, false);
    const auto& ws = witnesses_of[i];
    for_each_tuple(n, ws.size(), [&](std::span<const Element> lambda) {
      for (std::size_t w = 0; w < ws.size(); ++w) values[generators + ws[w]] = lambda[w];
      std::copy(entry.begin(), entry.end(), values.begin());
      const Element from = eval_slots(alg, t, values);
      std::copy(exit.begin(), exit.end(), values.begin());
      const Element to = eval_slots(alg, t, values);
      step[from * n + to] = true;
    });
    std::vector<bool> next(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < n; ++x)
        if (reach[a * n + x])
          for (std::size_t y = 0; y < n; ++y)
            if (step[x * n + y]) next[a * n + y] = true;
    reach = std::move(next);
  }
  return reach;
}

bool PcfSchema::holds(const FiniteAlgebra& alg, Element a, Element b, std::span<const Element> c,
                      std::span<const Element> d) const {
  if (a >= alg.size() || b >= alg.size()) throw PreconditionError("element out of range");
  return relation(alg, c, d)[a * alg.size() + b];
}

bool PcfSchema::holds_with_emitted(const FiniteAlgebra& alg, Element a, Element b,
                                   std::span<const Element> c, std::span<const Element> d) const {
  if (c.size() != generators || d.size() != generators)
    throw PreconditionError("generator tuples must have length " + std::to_string(generators));
  Env env{{"x", a}, {"y", b}};
  for (std::size_t j = 0; j < generators; ++j) {
    env[u_name(j)] = c[j];
    env[v_name(j)] = d[j];
  }
  for (std::size_t w = 0; w < witness_count; ++w) env[witness_name(w + 1)] = emitted_witness.at(w);
  return eval_formula(alg, matrix(), env);
}

PcfSchema certificate_to_formula(const FiniteAlgebra& alg, const MaltsevCertificate& cert) {
  const auto check = verify_certificate(alg, cert);
  if (!check.valid) throw PreconditionError("invalid certificate: " + check.message);
  PcfSchema out;
  out.generators = cert.c.size();
  for (const auto& step : cert.steps) {
    std::map<std::string, Term> renaming;
    if (out.generators > 0) renaming.emplace(kSlotVariable, var(u_name(step.generator)));
    std::vector<std::size_t> used;
    for (std::size_t l = 0; l < step.constants.size(); ++l) {
      renaming.emplace(witness_name(l + 1), var(witness_name(out.witness_count + 1)));
      used.push_back(out.witness_count++);
      out.emitted_witness.push_back(step.constants[l]);
    }
    out.terms.push_back(substitute(step.polynomial, renaming));
    out.witnesses_of.push_back(std::move(used));
  }
  return out;
}

}  // namespace ua
