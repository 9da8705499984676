#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ua/center.hpp"
#include "ua/definability.hpp"
#include "ua/formula.hpp"
#include "ua/pierce.hpp"

using namespace ua;

namespace {

const char* kRingPhi = "*(x,z1) = *(y,z1)";

std::vector<std::pair<FiniteAlgebra, FiniteAlgebra>> ring_pairs() {
  return {{oracle::load("z2"), oracle::load("z3")},
          {oracle::load("z2"), oracle::load("z2")},
          {oracle::load("z3"), oracle::load("z3")},
          {oracle::load("z6"), oracle::load("z2")}};
}

/// Random formulas over the ring signature with free variables among a, b.
class Generator {
 public:
  Generator(const Signature& sig, unsigned seed) : sig_(sig), rng_(seed) {}

  Term term(int depth, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
    switch (pick(rng_)) {
      case 0: return Term::variable(vars[rng_() % vars.size()]);
      case 1: return sig_.constant(rng_() % 2 ? "one" : "zero");
      case 2: return sig_.apply("+", {term(depth - 1, vars), term(depth - 1, vars)});
      case 3: return sig_.apply("*", {term(depth - 1, vars), term(depth - 1, vars)});
      default: return sig_.apply("-", {term(depth - 1, vars)});
    }
  }

  Formula formula(int depth, std::vector<std::string> vars) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0);
    switch (pick(rng_)) {
      case 0: return equation(term(2, vars), term(2, vars));
      case 1: return conjunction({formula(depth - 1, vars), formula(depth - 1, vars)});
      case 2: return disjunction({formula(depth - 1, vars), formula(depth - 1, vars)});
      case 3: return negation(formula(depth - 1, vars));
      case 4: return implication(formula(depth - 1, vars), formula(depth - 1, vars));
      default: {
        const std::string v = "q" + std::to_string(depth);
        vars.push_back(v);
        auto body = formula(depth - 1, vars);
        return pick(rng_) % 2 ? exists({v}, std::move(body)) : forall({v}, std::move(body));
      }
    }
  }

 private:
  const Signature& sig_;
  std::mt19937 rng_;
};

}  // namespace

TEST(Parser, Examples) {
  const auto z6 = oracle::load("z6");
  const auto& sig = z6.signature();
  const auto e = parse_formula("exists w . *(x,w) = y", sig);
  EXPECT_EQ(e.kind, Formula::Kind::Exists);
  EXPECT_EQ(e.variables, std::vector<std::string>{"w"});
  EXPECT_EQ(e.children[0].kind, Formula::Kind::Equation);
  EXPECT_TRUE(is_existential(e));

  EXPECT_THROW(parse_formula("forall x . phi", sig), ParseError);
  const auto q = parse_formula(kRingPhi, sig);
  EXPECT_EQ(free_variables(q), (std::set<std::string>{"x", "y", "z1"}));

  EXPECT_THROW(parse_formula("+(x) = y", sig), ParseError);
  EXPECT_THROW(parse_formula("x = ", sig), ParseError);
  EXPECT_THROW(parse_formula("(x = y", sig), ParseError);
  EXPECT_THROW(parse_formula("nope(x) = y", sig), ParseError);
  try {
    parse_formula("x = y &\n  +(x) = y", sig);
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
  }
  EXPECT_FALSE(is_existential(parse_formula("forall w . x = w", sig)));
  EXPECT_FALSE(is_existential(parse_formula("!(exists w . x = w)", sig)));
  EXPECT_TRUE(is_existential(parse_formula("!(forall w . x = w)", sig)));
}

TEST(Parser, Precedence) {
  const auto alg = oracle::load("z2");
  const auto& sig = alg.signature();
  const auto f = parse_formula("x = y | y = z & z = x -> !x = zero", sig);
  EXPECT_EQ(f.kind, Formula::Kind::Implies);
  EXPECT_EQ(f.children[0].kind, Formula::Kind::Or);
  EXPECT_EQ(f.children[0].children[1].kind, Formula::Kind::And);
  EXPECT_EQ(f.children[1].kind, Formula::Kind::Not);
  const auto c = parse_formula("x = zero", sig);
  EXPECT_FALSE(c.rhs.is_variable());
}

TEST(Printer, RoundTripsRandomFormulas) {
  const auto z3 = oracle::load("z3");
  Generator gen(z3.signature(), 7);
  for (int i = 0; i < 300; ++i) {
    const auto f = gen.formula(4, {"a", "b"});
    EXPECT_EQ(parse_formula(to_string(f), z3.signature()), f) << to_string(f);
  }
}

TEST(Eval, Examples) {
  const auto z6 = oracle::load("z6");
  const auto& sig = z6.signature();
  EXPECT_TRUE(eval_formula(z6, parse_formula(kRingPhi, sig), {{"x", 1}, {"y", 3}, {"z1", 3}}));
  EXPECT_TRUE(eval_formula(z6, parse_formula("x = x", sig), {{"x", 4}}));
  EXPECT_FALSE(eval_formula(z6, parse_formula("exists w . +(w,w) = one", sig)));
  EXPECT_THROW(eval_formula(z6, parse_formula("x = y", sig), {{"x", 1}}), PreconditionError);
}

TEST(Eval, AgreesWithRecursiveEvaluator) {
  for (const auto& name : {"z3", "z4"}) {
    const auto a = oracle::load(name);
    Generator gen(a.signature(), 11);
    for (int i = 0; i < 200; ++i) {
      const auto f = gen.formula(4, {"a", "b"});
      const CompiledFormula compiled(a, f, {"a", "b"});
      for (Element x = 0; x < a.size(); ++x)
        for (Element y = 0; y < a.size(); ++y) {
          const bool expected = oracle::holds(a, f, {{"a", x}, {"b", y}});
          EXPECT_EQ(eval_formula(a, f, {{"a", x}, {"b", y}}), expected) << to_string(f);
          const std::vector<Element> args{x, y};
          EXPECT_EQ(compiled(args), expected) << to_string(f);
        }
    }
  }
}

TEST(Substitute, CaptureAvoiding) {
  const auto alg = oracle::load("z2");
  const auto& sig = alg.signature();
  const auto f = parse_formula("exists w . +(x,w) = y", sig);
  const auto g = substitute(f, {{"x", Term::variable("w")}});
  EXPECT_EQ(free_variables(g), (std::set<std::string>{"w", "y"}));
  EXPECT_NE(g.variables[0], "w");
  const auto h = substitute(f, {{"w", Term::variable("y")}});
  EXPECT_EQ(h, f);
  // semantics preserved: substitute then evaluate = evaluate with binding
  const auto z2 = oracle::load("z2");
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b)
      EXPECT_EQ(oracle::holds(z2, g, {{"w", a}, {"y", b}}), oracle::holds(z2, f, {{"x", a}, {"y", b}}));
}

TEST(Definability, RingFormula) {
  const auto pairs = ring_pairs();
  const auto& sig = pairs[0].first.signature();
  const auto ok = defines_theta1(parse_formula(kRingPhi, sig), pairs);
  EXPECT_TRUE(ok.passed) << ok.message;
  EXPECT_GT(ok.quadruples_checked, 0u);
  EXPECT_FALSE(defines_theta1(parse_formula("x = y", sig), pairs).passed);
  EXPECT_FALSE(defines_theta1(parse_formula("x = x", sig), pairs).passed);
  // *(x,z1) with z1 = [0,1] keeps the right component: it defines θ_{1,e}, not θ_{0,e}.
  EXPECT_FALSE(defines_theta1(parse_formula(kRingPhi, sig), pairs, DefinabilityMode::Left).passed);
  EXPECT_TRUE(defines_theta1(parse_formula("*(x,-(+(z1,-(one)))) = *(y,-(+(z1,-(one))))", sig), pairs,
                             DefinabilityMode::Left)
                  .passed);
  EXPECT_THROW(defines_theta1(parse_formula("x = q", sig), pairs), PreconditionError);
}

TEST(Definability, QuadrupleOracle) {
  // Direct check of the definition on Z2 × Z3.
  const auto a = oracle::load("z2"), b = oracle::load("z3");
  const auto p = product(a, b).algebra;
  const auto phi = parse_formula(kRingPhi, a.signature());
  const Element e = pair_index(b, 0, 1);
  bool ok = true;
  for (Element x = 0; x < 2; ++x)
    for (Element c = 0; c < 3; ++c)
      for (Element y = 0; y < 2; ++y)
        for (Element d = 0; d < 3; ++d)
          ok = ok && oracle::holds(p, phi, {{"x", pair_index(b, x, c)}, {"y", pair_index(b, y, d)}, {"z1", e}}) ==
                         (c == d);
  EXPECT_TRUE(ok);
}

TEST(Sigma, SetShape) {
  const auto alg = oracle::load("z6");
  const auto& sig = alg.signature();
  const auto phi = parse_formula(kRingPhi, sig);
  const auto sigma = sigma_set(phi, sig);
  EXPECT_EQ(sigma.size(), 17u);
  EXPECT_EQ(sigma_labels(sig).size(), 17u);
  EXPECT_EQ(to_string(sigma[0]), "forall x . *(x,z1) = *(x,z1)");
  for (const auto& s : sigma) {
    const auto fv = free_variables(s);
    for (const auto& v : fv) EXPECT_TRUE(v == "z1" || v == "u1") << v;
  }
}

TEST(Sigma, MatchesComplementationOnZ6) {
  const auto z6 = oracle::load("z6");
  const auto phi = parse_formula(kRingPhi, z6.signature());
  const auto cs = oracle::centrals(z6, oracle::congruences(z6));
  const auto sigma = sigma_set(phi, z6.signature());
  for (Element e = 0; e < 6; ++e)
    for (Element f = 0; f < 6; ++f) {
      const std::vector<Element> et{e}, ft{f};
      const auto r = check_sigma(z6, et, ft, phi);
      bool expected = false;
      for (const auto& c : cs)
        if (c.tuple == Tuple{e} && c.theta0(f, 1) && c.theta1(f, 0)) expected = true;
      EXPECT_EQ(r.holds, expected) << e << "," << f;
      EXPECT_TRUE(r.agrees);
      bool all = true;
      for (const auto& s : sigma) all = all && oracle::holds(z6, s, {{"z1", e}, {"u1", f}});
      EXPECT_EQ(all, expected) << e << "," << f;
    }
  const std::vector<Element> three{3}, four{4}, two{2}, five{5};
  EXPECT_TRUE(check_sigma(z6, three, four, phi).holds);
  EXPECT_FALSE(check_sigma(z6, two, five, phi).holds);
}

TEST(Sigma, ConnectedAxiomsMatchConnectedness) {
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    const bool ring = std::find(oracle::ring_names().begin(), oracle::ring_names().end(), name) !=
                      oracle::ring_names().end();
    const auto phi = parse_formula(ring ? kRingPhi : "meet(x,z1) = meet(y,z1)", a.signature());
    EXPECT_EQ(check_connected_axioms(a, phi).holds, oracle::connected(a)) << name;
  }
  const auto m3 = oracle::load("m3");
  const auto r = check_connected_axioms(m3, parse_formula("meet(x,z1) = meet(y,z1)", m3.signature()));
  EXPECT_EQ(r.sigma_pairs, (std::vector<std::pair<Tuple, Tuple>>{{{0}, {4}}, {{4}, {0}}}));
}

TEST(Pcf, SchemaFromCertificates) {
  const auto z6 = oracle::load("z6");
  const std::vector<ElementPair> gen{{1, 3}};
  const auto res = principal_congruence(z6, gen, true);
  const std::vector<Element> c{1}, d{3};

  const auto refl = certificate_to_formula(z6, extract_certificate(z6, *res.provenance, {2, 2}));
  // A reflexive pair is reached by the constant polynomial w1 at λ = (2).
  EXPECT_EQ(refl.length(), 1u);
  EXPECT_EQ(refl.emitted_witness, std::vector<Element>{2});
  EXPECT_TRUE(refl.holds(z6, 2, 2, c, d));

  const auto cert = extract_certificate(z6, *res.provenance, {0, 2});
  const auto s = certificate_to_formula(z6, cert);
  EXPECT_TRUE(s.holds_with_emitted(z6, 0, 2, c, d));
  EXPECT_TRUE(oracle::holds(z6, s.formula(), {{"x", 0}, {"y", 2}, {"u1", 1}, {"v1", 3}}));
  EXPECT_FALSE(s.holds_with_emitted(z6, 0, 1, c, d));
  EXPECT_FALSE(s.holds(z6, 0, 1, c, d));
  EXPECT_TRUE(is_existential(s.formula()));
}

TEST(Pcf, RelationMatchesFullExistentialEvaluation) {
  // relation() against the recursive evaluator on the whole formula.
  for (const auto& name : {"z4", "l2x2", "m3"}) {
    const auto a = oracle::load(name);
    for (Element gc = 0; gc < a.size(); ++gc)
      for (Element gd = 0; gd < a.size(); ++gd) {
        const std::vector<ElementPair> gen{{gc, gd}};
        const auto res = principal_congruence(a, gen, true);
        const std::vector<Element> c{gc}, d{gd};
        for (Element x = 0; x < a.size(); ++x)
          for (Element y = 0; y < a.size(); ++y) {
            if (!res.congruence.related(x, y)) continue;
            const auto s = certificate_to_formula(a, extract_certificate(a, *res.provenance, {x, y}));
            if (s.witness_count > 4) continue;
            const auto rel = s.relation(a, c, d);
            for (Element p = 0; p < a.size(); ++p)
              for (Element q = 0; q < a.size(); ++q) {
                const bool expected = oracle::holds(a, s.formula(), {{"x", p}, {"y", q}, {"u1", gc}, {"v1", gd}});
                EXPECT_EQ(static_cast<bool>(rel[p * a.size() + q]), expected) << name;
                EXPECT_EQ(s.holds(a, p, q, c, d), expected);
              }
          }
      }
  }
}
