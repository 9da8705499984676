#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ua/center.hpp"

using namespace ua;

namespace {

std::vector<Tuple> tuples(const CenterAlgebra& z) {
  std::vector<Tuple> out;
  for (const auto& e : z.elements()) out.push_back(e.tuple);
  return out;
}

std::size_t at(const CenterAlgebra& z, Element x) { return *z.index_of(Tuple{x}); }

void expect_all_pass(const CheckReport& r, const std::string& context) {
  for (const auto& rec : r.records) EXPECT_TRUE(rec.passed) << context << ": " << rec.name << " " << rec.witness;
}

}  // namespace

TEST(Center, MatchesFactorPairOracleOnCorpus) {
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    const auto expected = oracle::centrals(a, oracle::congruences(a));
    const CenterAlgebra z(a);
    ASSERT_EQ(z.size(), expected.size()) << name;
    for (std::size_t i = 0; i < z.size(); ++i) {
      EXPECT_EQ(z.tuple(i), expected[i].tuple) << name;
      EXPECT_EQ(oracle::rel_of(z.element(i).theta0, a.size()), expected[i].theta0) << name;
      EXPECT_EQ(oracle::rel_of(z.element(i).theta1, a.size()), expected[i].theta1) << name;
    }
  }
}

TEST(Center, Examples) {
  const CenterAlgebra z6(oracle::load("z6"));
  EXPECT_EQ(tuples(z6), (std::vector<Tuple>{{0}, {1}, {3}, {4}}));
  EXPECT_EQ(z6.complement(at(z6, 3)), at(z6, 4));
  EXPECT_EQ(z6.meet(at(z6, 3), at(z6, 4)), at(z6, 0));
  EXPECT_EQ(z6.join(at(z6, 3), at(z6, 4)), at(z6, 1));
  EXPECT_EQ(z6.complement(z6.bottom()), z6.top());
  EXPECT_TRUE(z6.element(z6.bottom()).theta0.is_identity());
  EXPECT_TRUE(z6.element(z6.top()).theta1.is_identity());

  const CenterAlgebra m3(oracle::load("m3"));
  EXPECT_EQ(tuples(m3), (std::vector<Tuple>{{0}, {4}}));

  const CenterAlgebra l(oracle::load("l2x2"));
  EXPECT_EQ(l.size(), 4u);
  std::vector<Tuple> atoms;
  for (auto i : l.atoms()) atoms.push_back(l.tuple(i));
  EXPECT_EQ(atoms, (std::vector<Tuple>{{1}, {2}}));
  EXPECT_EQ(l.complement(at(l, 1)), at(l, 2));
}

TEST(Center, BooleanOperationsMatchFactorCongruences) {
  // meet and join in Z(A) correspond to meet and join of theta0.
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    const auto cons = oracle::congruences(a);
    const CenterAlgebra z(a);
    auto t0 = [&](std::size_t i) { return oracle::rel_of(z.element(i).theta0, a.size()); };
    for (std::size_t i = 0; i < z.size(); ++i) {
      EXPECT_EQ(t0(z.complement(i)), oracle::rel_of(z.element(i).theta1, a.size())) << name;
      for (std::size_t j = 0; j < z.size(); ++j) {
        EXPECT_EQ(t0(z.meet(i, j)), oracle::intersect(t0(i), t0(j))) << name;
        EXPECT_EQ(t0(z.join(i, j)), oracle::join(cons, t0(i), t0(j))) << name;
        EXPECT_EQ(z.leq(i, j), oracle::subset(t0(i), t0(j)));
      }
    }
  }
}

TEST(Center, AxiomsAndLawsPassOnCorpus) {
  for (const auto& name : oracle::corpus_names()) {
    const CenterAlgebra z(oracle::load(name));
    expect_all_pass(check_boolean_laws(z), name);
    expect_all_pass(check_center_axioms(z), name);
    expect_all_pass(check_center_bijection(z), name);
    EXPECT_NE(check_center_axioms(z).find("rex-instance"), nullptr);
  }
}

TEST(Center, RexInstanceOnSquareLattice) {
  const auto l = oracle::load("l2x2");
  const CenterAlgebra z(l);
  const auto cons = oracle::congruences(l);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Element e = z.tuple(i)[0];
    EXPECT_EQ(oracle::rel_of(z.element(i).theta1, 4), oracle::generated(cons, {{3, e}}));
    EXPECT_EQ(oracle::rel_of(z.element(i).theta0, 4), oracle::generated(cons, {{0, e}}));
  }
}

TEST(Center, Degenerate) {
  EXPECT_THROW(CenterAlgebra(oracle::load("bare4")), CenterViolation);
  const auto z2 = oracle::load("z2");
  const std::string text =
      "algebra D\nsize 2\ntuple-length 1\nop c 0\n0\nzero c\none c\n";
  EXPECT_THROW(CenterAlgebra(io::parse_algebra(text)), DegenerateConstants);
  const auto one = trivial_algebra(z2.signature_ptr());
  EXPECT_EQ(CenterAlgebra(one).size(), 1u);
}

TEST(HomCenter, Examples) {
  const auto f = io::load_homomorphism(oracle::data_path("l_into_m3.hom"));
  const auto r = hom_center_check(f);
  EXPECT_FALSE(r.sc);
  ASSERT_TRUE(r.sc_witness.has_value());
  EXPECT_EQ(*r.sc_witness, Tuple{1});

  const auto z6 = oracle::load("z6"), z3 = oracle::load("z3");
  const auto mod3 = Homomorphism::checked(z6, z3, {0, 1, 2, 0, 1, 2});
  const auto r3 = hom_center_check(mod3);
  EXPECT_TRUE(r3.sc);
  EXPECT_TRUE(r3.csc);
  EXPECT_TRUE(r3.boolean_hom);

  const auto id = hom_center_check(Homomorphism::identity(z6));
  EXPECT_TRUE(id.sc && id.csc && id.boolean_hom);
}

TEST(HomCenter, ScAgreesWithOracleForProjections) {
  const auto z2 = oracle::load("z2"), z3 = oracle::load("z3");
  const auto p = product(z2, z3);
  for (const auto& proj : {p.first, p.second}) {
    const auto r = hom_center_check(proj);
    const auto target = oracle::centrals(proj.target, oracle::congruences(proj.target));
    bool sc = true;
    for (const auto& e : oracle::centrals(p.algebra, oracle::congruences(p.algebra))) {
      const Tuple img{proj(e.tuple[0])};
      sc = sc && std::any_of(target.begin(), target.end(), [&](const auto& t) { return t.tuple == img; });
    }
    EXPECT_EQ(r.sc, sc);
  }
}

TEST(LiftCentral, Examples) {
  const auto z6 = oracle::load("z6");
  const auto mod2 = theta(z6, 0, 2);
  const std::vector<Element> zero{0};
  EXPECT_EQ(lift_central(z6, mod2, zero).tuple, Tuple{4});
  const std::vector<Element> three{3};
  EXPECT_EQ(lift_central(z6, Congruence::identity(z6), three).tuple, Tuple{3});
  EXPECT_EQ(lift_central(z6, Congruence::universal(z6), zero).tuple, Tuple{1});
  const std::vector<Element> two{2};
  EXPECT_THROW(lift_central(z6, Congruence::identity(z6), two), PreconditionError);
}

TEST(Coextensive, CodisjointAndProductStability) {
  const auto z2 = oracle::load("z2"), z3 = oracle::load("z3"), z6 = oracle::load("z6");
  EXPECT_TRUE(check_codisjoint(z2, z3));
  EXPECT_TRUE(check_codisjoint(oracle::load("l2"), oracle::load("m3")));

  const std::vector<Element> three{3};
  const auto mod3 = Homomorphism::checked(z6, z3, {0, 1, 2, 0, 1, 2});
  const auto s = check_product_stability(mod3, three);
  EXPECT_TRUE(s.stable);
  EXPECT_EQ(s.left.target_quotient.algebra.size() * s.right.target_quotient.algebra.size(), 3u);

  const auto sid = check_product_stability(Homomorphism::identity(z6), three);
  EXPECT_TRUE(sid.stable);
  std::vector<std::size_t> sizes{sid.left.target_quotient.algebra.size(), sid.right.target_quotient.algebra.size()};
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 3}));
}
