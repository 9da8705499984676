#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ua/congruence.hpp"

using namespace ua;

namespace {

std::vector<oracle::Rel> rels(const std::vector<Congruence>& cons) {
  std::vector<oracle::Rel> out;
  for (const auto& c : cons) out.push_back(oracle::rel_of(c, c.size()));
  std::sort(out.begin(), out.end());
  return out;
}

Congruence from_blocks(const FiniteAlgebra& a, const std::vector<std::vector<Element>>& blocks) {
  return Congruence(a, Partition::from_blocks(a.size(), blocks));
}

}  // namespace

TEST(Congruence, ConstructorRejectsIncompatible) {
  const auto z6 = oracle::load("z6");
  EXPECT_THROW(from_blocks(z6, {{0, 1}, {2}, {3}, {4}, {5}}), PreconditionError);
  EXPECT_NO_THROW(from_blocks(z6, {{0, 3}, {1, 4}, {2, 5}}));
}

TEST(Principal, Examples) {
  const auto z6 = oracle::load("z6");
  EXPECT_EQ(theta(z6, 1, 3).to_string(), "{0,2,4},{1,3,5}");
  EXPECT_EQ(theta(z6, 1, 4).to_string(), "{0,3},{1,4},{2,5}");
  EXPECT_TRUE(theta(z6, std::span<const ElementPair>{}).is_identity());
}

TEST(Principal, MatchesIntersectionOracleOnCorpus) {
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    const auto cons = oracle::congruences(a);
    for (Element x = 0; x < a.size(); ++x)
      for (Element y = 0; y < a.size(); ++y)
        EXPECT_EQ(oracle::rel_of(theta(a, x, y), a.size()), oracle::generated(cons, {{x, y}}))
            << name << " " << x << "," << y;
  }
}

TEST(Principal, SeveralGenerators) {
  const auto z6 = oracle::load("z6");
  const auto cons = oracle::congruences(z6);
  const std::vector<ElementPair> s{{1, 3}, {1, 4}};
  EXPECT_EQ(oracle::rel_of(theta(z6, s), 6), oracle::generated(cons, {{1, 3}, {1, 4}}));
  EXPECT_TRUE(theta(z6, s).is_universal());
}

TEST(AllCongruences, MatchPartitionFilterOracle) {
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    EXPECT_EQ(rels(all_congruences(a)), oracle::congruences(a)) << name;
  }
  EXPECT_EQ(all_congruences(oracle::load("z6")).size(), 4u);
  EXPECT_EQ(all_congruences(oracle::load("m3")).size(), 2u);
  EXPECT_EQ(all_congruences(oracle::load("l2x2")).size(), 4u);
}

TEST(AllCongruences, SizeCap) {
  EXPECT_THROW(all_congruences(oracle::load("l2x2x2"), 7), SizeCapExceeded);
}

TEST(Lattice, JoinMeetSolvePermute) {
  const auto z6 = oracle::load("z6");
  const auto mod2 = theta(z6, 0, 2), mod3 = theta(z6, 0, 3);
  EXPECT_TRUE(congruence_join(mod2, mod3).is_universal());
  EXPECT_TRUE(congruence_meet(mod2, mod3).is_identity());
  EXPECT_EQ(congruence_join(mod2, Congruence::identity(z6)), mod2);
  EXPECT_EQ(congruence_meet(mod2, Congruence::universal(z6)), mod2);
  EXPECT_TRUE(permutes(mod2, mod2));
  EXPECT_TRUE(permutes(mod2, mod3));

  const std::vector<SystemConstraint> sys{{mod2, 1}, {mod3, 2}};
  EXPECT_EQ(solve_system(z6, sys), std::vector<Element>{5});
  const std::vector<SystemConstraint> delta{{Congruence::identity(z6), 4}};
  EXPECT_EQ(solve_system(z6, delta), std::vector<Element>{4});
}

TEST(Lattice, PermutesAgreesWithComposition) {
  for (const auto& name : {"n5", "m3", "z4"}) {
    const auto a = oracle::load(name);
    const auto cons = all_congruences(a);
    for (const auto& x : cons)
      for (const auto& y : cons) {
        const auto rx = oracle::rel_of(x, a.size()), ry = oracle::rel_of(y, a.size());
        EXPECT_EQ(permutes(x, y), oracle::compose(rx, ry) == oracle::compose(ry, rx)) << name;
        EXPECT_EQ(oracle::rel_of(congruence_join(x, y), a.size()),
                  oracle::join(oracle::congruences(a), rx, ry));
      }
  }
}

TEST(FactorPairs, MatchOracle) {
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    const auto expected = oracle::factor_pairs(oracle::congruences(a));
    const auto got = factor_pairs(a);
    ASSERT_EQ(got.size(), expected.size()) << name;
    for (const auto& p : got) {
      const auto t = oracle::rel_of(p.first, a.size()), d = oracle::rel_of(p.second, a.size());
      EXPECT_TRUE(std::any_of(expected.begin(), expected.end(),
                              [&](const oracle::Pair& e) { return e.theta == t && e.delta == d; }));
      EXPECT_TRUE(is_factor_pair(p.first, p.second));
    }
  }
  EXPECT_EQ(factor_pairs(oracle::load("z6")).size(), 4u);
  EXPECT_EQ(factor_pairs(oracle::load("m3")).size(), 2u);
  const auto z6 = oracle::load("z6");
  EXPECT_TRUE(is_factor_pair(Congruence::identity(z6), Congruence::universal(z6)));
}

TEST(Product, FactorizationAndFhp) {
  const auto z2 = oracle::load("z2"), z3 = oracle::load("z3");
  const auto p = product(z2, z3);
  const Congruence ker(p.algebra, p.first.kernel());
  const auto f = factorize_product_congruence(z2, z3, ker);
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(f->left.is_identity());
  EXPECT_TRUE(f->right.is_universal());

  const auto fhp = check_fhp_instance(z2, z3);
  EXPECT_TRUE(fhp.holds);
  EXPECT_EQ(fhp.pairs_checked, 36u);  // ordered pairs of the 6 product elements

  // Every congruence of the lattice product 2x2 x 2 factorizes.
  const auto l2x2 = oracle::load("l2x2"), l2 = oracle::load("l2");
  const auto lp = product(l2x2, l2).algebra;
  for (const auto& c : all_congruences(lp)) {
    const auto fc = factorize_product_congruence(l2x2, l2, c);
    ASSERT_TRUE(fc.has_value()) << c.to_string();
    EXPECT_EQ(product_partition(fc->left.partition(), fc->right.partition()), c.partition());
  }
}

TEST(Product, FhpFailsWithoutFactorization) {
  // In a set with no operations besides two constants the diagonal of the
  // square is a congruence that does not factor.
  const auto bare = oracle::load("bare4");
  const auto p = product(bare, bare).algebra;
  std::vector<ElementPair> diagonal;
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) diagonal.emplace_back(pair_index(bare, x, y), pair_index(bare, y, x));
  const auto c = theta(p, diagonal);
  EXPECT_FALSE(factorize_product_congruence(bare, bare, c).has_value());
}

TEST(Certificate, Examples) {
  const auto z6 = oracle::load("z6");
  const std::vector<ElementPair> gen{{1, 3}};
  const auto res = principal_congruence(z6, gen, true);
  ASSERT_TRUE(res.provenance.has_value());

  const auto c02 = extract_certificate(z6, *res.provenance, {0, 2});
  EXPECT_EQ(c02.length() % 2, 1u);
  EXPECT_TRUE(verify_certificate(z6, c02).valid);

  // (4,4) needs a constant polynomial: t1 = x would give the pair (1,3).
  const auto refl = extract_certificate(z6, *res.provenance, {4, 4});
  EXPECT_EQ(refl.length(), 1u);
  EXPECT_EQ(refl.steps[0].polynomial, Term::variable(witness_name(1)));
  EXPECT_EQ(refl.steps[0].constants, std::vector<Element>{4});
  EXPECT_TRUE(verify_certificate(z6, refl).valid);

  const auto self = extract_certificate(z6, *res.provenance, {1, 3});
  EXPECT_EQ(self.length(), 1u);
  EXPECT_EQ(self.steps[0].polynomial, Term::variable(kSlotVariable));

  EXPECT_THROW(extract_certificate(z6, *res.provenance, {0, 1}), PreconditionError);

  auto broken = c02;
  broken.steps.back().value = (broken.steps.back().value + 1) % 6;
  EXPECT_FALSE(verify_certificate(z6, broken).valid);
  auto unbound = c02;
  unbound.steps[0].polynomial = parse_term("+(x,w9)", z6.signature());
  EXPECT_THROW(verify_certificate(z6, unbound), Error);
}

TEST(Certificate, ReplayAgreesWithHandEvaluation) {
  // Evaluate each chain link directly: t_i(c) and t_i(d) must chain a → b.
  for (const auto& name : {"z4", "n5", "l2x2"}) {
    const auto a = oracle::load(name);
    for (Element c = 0; c < a.size(); ++c)
      for (Element d = 0; d < a.size(); ++d) {
        const std::vector<ElementPair> gen{{c, d}};
        const auto res = principal_congruence(a, gen, true);
        for (Element x = 0; x < a.size(); ++x)
          for (Element y = 0; y < a.size(); ++y) {
            if (!res.congruence.related(x, y)) continue;
            const auto cert = extract_certificate(a, *res.provenance, {x, y});
            ASSERT_TRUE(verify_certificate(a, cert).valid);
            Element cur = x;
            for (std::size_t i = 0; i < cert.length(); ++i) {
              std::map<std::string, Element> env;
              for (std::size_t w = 0; w < cert.steps[i].constants.size(); ++w)
                env[witness_name(w + 1)] = cert.steps[i].constants[w];
              env[kSlotVariable] = i % 2 == 0 ? c : d;
              EXPECT_EQ(oracle::term_value(a, cert.steps[i].polynomial, env), cur);
              env[kSlotVariable] = i % 2 == 0 ? d : c;
              cur = oracle::term_value(a, cert.steps[i].polynomial, env);
              EXPECT_EQ(cur, cert.steps[i].value);
            }
            EXPECT_EQ(cur, y);
          }
      }
  }
}
