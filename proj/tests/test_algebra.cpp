#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ua/algebra.hpp"
#include "ua/congruence.hpp"
#include "ua/formula.hpp"
#include "ua/io.hpp"
#include "ua/pushout.hpp"

using namespace ua;

namespace {

std::vector<Element> mod_map(std::size_t n, std::size_t m) {
  std::vector<Element> out;
  for (std::size_t x = 0; x < n; ++x) out.push_back(static_cast<Element>(x % m));
  return out;
}

}  // namespace

TEST(Partition, CountsMatchBellNumbers) {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203, 877};
  for (std::size_t n = 1; n < bell.size(); ++n) {
    EXPECT_EQ(all_partitions(n).size(), bell[n]) << n;
    EXPECT_EQ(oracle::equivalences(n).size(), bell[n]) << n;
  }
}

TEST(Partition, MeetJoinRefinesAgreeWithRelations) {
  const auto parts = all_partitions(4);
  for (const auto& p : parts)
    for (const auto& q : parts) {
      const auto rp = oracle::rel_of(p, 4), rq = oracle::rel_of(q, 4);
      EXPECT_EQ(oracle::rel_of(p.meet(q), 4), oracle::intersect(rp, rq));
      // join of equivalences = transitive closure of the union
      oracle::Rel u(4);
      for (std::size_t i = 0; i < u.m.size(); ++i) u.m[i] = rp.m[i] || rq.m[i];
      for (int round = 0; round < 4; ++round) u = oracle::compose(u, u);
      EXPECT_EQ(oracle::rel_of(p.join(q), 4), u);
      EXPECT_EQ(p.refines(q), oracle::subset(rp, rq));
    }
}

TEST(Partition, RepresentativesAndPrinting) {
  const auto p = Partition::from_blocks(6, {{1, 3, 5}, {0, 2, 4}});
  EXPECT_EQ(p.to_string(), "{0,2,4},{1,3,5}");
  EXPECT_EQ(p.representatives(), (std::vector<Element>{0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(p.block_count(), 2u);
  EXPECT_THROW(Partition::from_representatives({1, 1}), PreconditionError);
  const std::vector<Element> map{2, 0, 2, 1};
  EXPECT_EQ(Partition::kernel(map).to_string(), "{0,2},{1},{3}");
}

TEST(EvalTerm, Examples) {
  const auto z6 = oracle::load("z6");
  const auto sq = parse_term("*(x,x)", z6.signature());
  EXPECT_EQ(eval_term(z6, sq, {{"x", 3}}), 3u);
  EXPECT_EQ(eval_term(z6, Term::variable("x"), {{"x", 5}}), 5u);
  EXPECT_EQ(eval_term(z6, parse_term("one", z6.signature())), 1u);
  EXPECT_THROW(eval_term(z6, sq), Error);
}

TEST(Product, Z2TimesZ3IsZ6) {
  const auto z2 = oracle::load("z2"), z3 = oracle::load("z3"), z6 = oracle::load("z6");
  const auto p = product(z2, z3);
  EXPECT_EQ(p.algebra.size(), 6u);
  EXPECT_TRUE(is_homomorphism(p.algebra, z2, p.first.map).holds);
  EXPECT_TRUE(is_homomorphism(p.algebra, z3, p.second.map).holds);
  const auto iso = find_isomorphism(p.algebra, z6);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(oracle::preserves(p.algebra, z6, iso->map));
  EXPECT_TRUE(oracle::isomorphism(p.algebra, z6).has_value());
}

TEST(Product, WithTrivialFactor) {
  const auto z4 = oracle::load("z4");
  const auto p = product(z4, trivial_algebra(z4.signature_ptr()));
  EXPECT_TRUE(find_isomorphism(p.algebra, z4).has_value());
}

TEST(Isomorphism, AgreesWithPermutationScan) {
  const auto z2 = oracle::load("z2"), z4 = oracle::load("z4");
  const auto z2z2 = product(z2, z2).algebra;
  EXPECT_FALSE(find_isomorphism(z4, z2z2).has_value());
  EXPECT_FALSE(oracle::isomorphism(z4, z2z2).has_value());
  for (const auto& name : oracle::corpus_names()) {
    const auto a = oracle::load(name);
    if (a.size() > 7) continue;
    const auto self = find_isomorphism(a, a);
    ASSERT_TRUE(self.has_value()) << name;
    EXPECT_TRUE(oracle::preserves(a, a, self->map));
  }
  // M3 and N5 have the same size and signature but are not isomorphic.
  EXPECT_FALSE(find_isomorphism(oracle::load("m3"), oracle::load("n5")).has_value());
  EXPECT_FALSE(oracle::isomorphism(oracle::load("m3"), oracle::load("n5")).has_value());
}

TEST(Quotient, Examples) {
  const auto z6 = oracle::load("z6");
  const auto q = quotient(z6, theta(z6, 1, 3).partition());
  EXPECT_EQ(q.algebra.size(), 2u);
  EXPECT_TRUE(find_isomorphism(q.algebra, oracle::load("z2")).has_value());
  EXPECT_TRUE(find_isomorphism(quotient(z6, Partition::identity(6)).algebra, z6).has_value());
  EXPECT_EQ(quotient(z6, Partition::universal(6)).algebra.size(), 1u);
  EXPECT_THROW(quotient(z6, Partition::from_blocks(6, {{0, 1}, {2}, {3}, {4}, {5}})), PreconditionError);
}

TEST(Homomorphism, Examples) {
  const auto z6 = oracle::load("z6"), z3 = oracle::load("z3"), z2 = oracle::load("z2");
  EXPECT_TRUE(is_homomorphism(z6, z3, mod_map(6, 3)).holds);
  EXPECT_TRUE(oracle::preserves(z6, z3, mod_map(6, 3)));
  EXPECT_TRUE(is_homomorphism(z6, z6, Homomorphism::identity(z6).map).holds);
  auto bad = mod_map(6, 2);
  bad[5] = 0;
  const auto check = is_homomorphism(z6, z2, bad);
  EXPECT_FALSE(check.holds);
  EXPECT_TRUE(check.violation.has_value());
  EXPECT_THROW(Homomorphism::checked(z6, z2, bad), PreconditionError);
}

TEST(Subuniverse, Examples) {
  const auto m3 = oracle::load("m3");
  const std::vector<Element> ab{1, 2};
  EXPECT_EQ(subuniverse_generate(m3, ab), (std::vector<Element>{0, 1, 2, 4}));
  const std::vector<Element> all{0, 1, 2, 3, 4};
  EXPECT_EQ(subuniverse_generate(m3, all), all);
  const auto z6 = oracle::load("z6");
  EXPECT_EQ(subuniverse_generate(z6, {}), (std::vector<Element>{0, 1, 2, 3, 4, 5}));
}

TEST(Pushout, Examples) {
  const auto z6 = oracle::load("z6"), z3 = oracle::load("z3"), z2 = oracle::load("z2");
  const std::vector<ElementPair> s13{{1, 3}};
  const auto id = pushout_of_quotients(Homomorphism::identity(z6), s13);
  EXPECT_TRUE(id.commutes);
  EXPECT_TRUE(find_isomorphism(id.target_quotient.algebra, z2).has_value());

  const auto to3 = pushout_of_quotients(Homomorphism::checked(z6, z3, mod_map(6, 3)), s13);
  EXPECT_TRUE(to3.commutes);
  EXPECT_EQ(to3.target_quotient.algebra.size(), 1u);

  const std::vector<ElementPair> s14{{1, 4}};
  const auto to2 = pushout_of_quotients(Homomorphism::checked(z6, z2, mod_map(6, 2)), s14);
  EXPECT_EQ(to2.target_quotient.algebra.size(), 1u);
}

TEST(Pushout, UniversalPropertyByMapSearch) {
  // For every g: Z6 → C collapsing S there is exactly one h with h∘ν = g.
  const auto z6 = oracle::load("z6");
  const std::vector<ElementPair> s{{1, 3}};
  const auto q = pushout_of_quotients(Homomorphism::identity(z6), s).source_quotient;
  std::size_t collapsing = 0;
  for (const auto& name : {"z2", "z3", "z6"}) {
    const auto c = oracle::load(name);
    for_each_tuple(c.size(), 6, [&](std::span<const Element> g) {
      if (g[1] != g[3]) return;
      const std::vector<Element> gv(g.begin(), g.end());
      if (!oracle::preserves(z6, c, gv)) return;
      ++collapsing;
      std::size_t factorizations = 0;
      for_each_tuple(c.size(), q.algebra.size(), [&](std::span<const Element> h) {
        bool ok = true;
        for (Element x = 0; x < 6; ++x) ok = ok && h[q.canonical(x)] == g[x];
        if (ok) ++factorizations;
      });
      EXPECT_EQ(factorizations, 1u) << name;
    });
  }
  EXPECT_EQ(collapsing, 1u);  // only x ↦ x mod 2
}

TEST(Io, LoadsCorpus) {
  const auto z6 = oracle::load("z6");
  EXPECT_EQ(z6.size(), 6u);
  EXPECT_EQ(z6.name(), "Z6");
  EXPECT_EQ(z6.zero(), Tuple{0});
  EXPECT_EQ(z6.one(), Tuple{1});
  const auto again = io::parse_algebra(io::write_algebra(z6));
  EXPECT_TRUE(again == z6);
}

TEST(Io, Errors) {
  const std::string head = "algebra X\nsize 2\ntuple-length 1\nop c 0\n0\n";
  EXPECT_THROW(io::parse_algebra(head + "op f 1\n0 7\nzero c\none c\n"), ParseError);
  EXPECT_THROW(io::parse_algebra(head + "zero c c\none c\n"), ParseError);
  EXPECT_THROW(io::parse_algebra(head + "zero c\none nope\n"), ParseError);
  EXPECT_THROW(io::parse_algebra(head + "op f 2\n0 1 1\nzero c\none c\n"), ParseError);
  EXPECT_THROW(io::parse_algebra("size 2\n"), ParseError);
  try {
    io::parse_algebra(head + "op f 1\n0 7\nzero c\none c\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos);
  }
  EXPECT_THROW(io::load_algebra(oracle::data_path("missing.alg")), ParseError);
}

TEST(Io, Homomorphism) {
  const auto f = io::load_homomorphism(oracle::data_path("l_into_m3.hom"));
  EXPECT_EQ(f.map, (std::vector<Element>{0, 1, 2, 4}));
  EXPECT_TRUE(is_homomorphism(f.source, f.target, f.map).holds);
  EXPECT_THROW(io::parse_homomorphism("hom l2x2 m3\n0 -> 0\n", oracle::data_path("")), ParseError);
  EXPECT_THROW(io::parse_homomorphism("hom l2x2 m3\n0 -> 0\n1 -> 1\n2 -> 2\n3 -> 9\n", oracle::data_path("")),
               ParseError);
}

TEST(Io, Lattice) {
  const auto site = io::load_lattice(oracle::data_path("bool2.lat"));
  EXPECT_EQ(site.size(), 4u);
  EXPECT_EQ(site.join(1, 2), 3u);
  EXPECT_THROW(io::parse_lattice("lattice x\nsize 2\nmeet\n0 0 0 1\njoin\n0 0 0 1\n"), Error);
}
