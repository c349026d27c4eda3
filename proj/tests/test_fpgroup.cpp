#include "twistalex/fpgroup.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace twistalex;

namespace {

FreeWord random_word(std::mt19937& rng, int gens, int len) {
  std::uniform_int_distribution<int> g(0, gens - 1), s(0, 1);
  FreeWord w;
  for (int i = 0; i < len; ++i) w.push_back({g(rng), s(rng) ? 1 : -1});
  return w;
}

GroupRingElement left_multiply(const FreeWord& u, const GroupRingElement& x) {
  GroupRingElement out;
  for (const auto& [w, c] : x.terms()) out.add(free_reduce(concat(u, w)), c);
  return out;
}

GroupRingElement sum(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out = a;
  for (const auto& [w, c] : b.terms()) out.add(w, c);
  return out;
}

GroupRingElement element(std::initializer_list<std::pair<const char*, long>> terms) {
  GroupRingElement out;
  for (const auto& [w, c] : terms) out.add(parse_word(w), c);
  return out;
}

}  // namespace

TEST(FreeReduce, Examples) {
  EXPECT_TRUE(free_reduce(parse_word("x1 x1^-1")).empty());
  EXPECT_EQ(free_reduce(parse_word("x1 x2 x2^-1 x1")), parse_word("x1 x1"));
  const FreeWord w = parse_word("x1 x2 x1^-1");
  EXPECT_EQ(free_reduce(w), w);
}

TEST(FreeReduce, CascadingCancellation) { EXPECT_TRUE(free_reduce(parse_word("a b c C B A")).empty()); }

TEST(FreeReduce, IdempotentAndShortening) {
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    const FreeWord w = random_word(rng, 3, 12);
    const FreeWord r = free_reduce(w);
    EXPECT_EQ(free_reduce(r), r);
    EXPECT_LE(r.size(), w.size());
    for (std::size_t j = 1; j < r.size(); ++j) EXPECT_FALSE(r[j].gen == r[j - 1].gen && r[j].exp == -r[j - 1].exp);
  }
}

TEST(Words, TextForms) {
  EXPECT_EQ(to_string(parse_word("x1 x2^-1 x1")), "x1 x2^-1 x1");
  EXPECT_EQ(to_string(FreeWord{}), "1");
  EXPECT_EQ(parse_word("aB"), parse_word("x1 x2^-1"));
  EXPECT_EQ(parse_word("x2^-2"), parse_word("x2^-1 x2^-1"));
  EXPECT_THROW(parse_word("x1 ?"), std::invalid_argument);
  EXPECT_EQ(inverse(parse_word("a b")), parse_word("B A"));
}

TEST(Fox, Examples) {
  EXPECT_EQ(fox_derivative(parse_word("a"), 0), element({{"", 1}}));
  // d(x y x^-1 y^-1)/dx = 1 - x y x^-1
  EXPECT_EQ(fox_derivative(parse_word("a b A B"), 0), element({{"", 1}, {"a b A", -1}}));
  // d(a b a b^-1 a^-1 b^-1)/da = 1 + ab - abab^-1a^-1
  EXPECT_EQ(fox_derivative(parse_word("a b a B A B"), 0), element({{"", 1}, {"a b", 1}, {"a b a B A", -1}}));
  EXPECT_EQ(fox_derivative(parse_word("A"), 0), element({{"A", -1}}));
  EXPECT_TRUE(fox_derivative(parse_word("b"), 0).terms().empty());
}

TEST(Fox, ProductRule) {
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) {
    const FreeWord u = free_reduce(random_word(rng, 3, 6)), v = free_reduce(random_word(rng, 3, 6));
    for (int j = 0; j < 3; ++j) {
      const GroupRingElement lhs = fox_derivative(free_reduce(concat(u, v)), j);
      const GroupRingElement rhs = sum(fox_derivative(u, j), left_multiply(u, fox_derivative(v, j)));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Fox, FundamentalFormula) {
  // sum_j (dw/dx_j)(x_j - 1) = w - 1 in the free group ring.
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const FreeWord w = free_reduce(random_word(rng, 3, 10));
    GroupRingElement total;
    for (int j = 0; j < 3; ++j) {
      const GroupRingElement d = fox_derivative(w, j);
      for (const auto& [t, c] : d.terms()) {
        total.add(free_reduce(concat(t, FreeWord{Letter{j, 1}})), c);
        total.add(t, -c);
      }
    }
    GroupRingElement expected;
    expected.add(w, 1);
    expected.add({}, -1);
    EXPECT_EQ(total, expected);
  }
}

TEST(DropRedundant, BraidTrefoil) {
  GroupPresentation p;
  p.num_generators = 2;
  p.component_of = {0, 0};
  p.relators = {parse_word("a b a B A B"), parse_word("b a b A B A")};
  const GroupPresentation q = drop_redundant_relation(p);
  ASSERT_EQ(q.relators.size(), 1u);
  EXPECT_EQ(q.relators[0], p.relators[0]);
}

TEST(DropRedundant, UnknotUnchanged) {
  GroupPresentation p;
  p.num_generators = 1;
  p.component_of = {0};
  EXPECT_TRUE(drop_redundant_relation(p).relators.empty());
}

TEST(DropRedundant, WirtingerTrefoil) {
  GroupPresentation p;
  p.num_generators = 3;
  p.component_of = {0, 0, 0};
  p.relators = {parse_word("C B a b"), parse_word("A C b c"), parse_word("B A c a")};
  const GroupPresentation q = drop_redundant_relation(p);
  EXPECT_EQ(q.num_generators, 3);
  EXPECT_EQ(q.relators.size(), 2u);
  EXPECT_EQ(q.deficiency(), 1);
}

TEST(DropRedundant, FailsWhenEveryRelatorMatters) {
  GroupPresentation p;
  p.num_generators = 2;
  p.component_of = {0, 1};
  p.num_components = 2;
  p.relators = {parse_word("a"), parse_word("b")};
  EXPECT_THROW(drop_redundant_relation(p), std::invalid_argument);
}

TEST(Abelianization, Examples) {
  GroupPresentation trefoil;
  trefoil.num_generators = 2;
  trefoil.component_of = {0, 0};
  trefoil.relators = {parse_word("a b a B A B")};
  const PhiMap phi = abelianization_map(trefoil);
  EXPECT_EQ(phi.rank, 1);
  EXPECT_EQ(phi.images, (std::vector<Exponents>{{1}, {1}}));

  GroupPresentation hopf;
  hopf.num_generators = 2;
  hopf.num_components = 2;
  hopf.component_of = {0, 1};
  hopf.relators = {parse_word("a b A B")};
  const PhiMap phi2 = abelianization_map(hopf);
  EXPECT_EQ(phi2.images, (std::vector<Exponents>{{1, 0}, {0, 1}}));
  EXPECT_EQ(phi2.apply(parse_word("a a B")), (Exponents{2, -1}));

  GroupPresentation bad = trefoil;
  bad.relators = {parse_word("a a b")};
  EXPECT_THROW(abelianization_map(bad), std::invalid_argument);
}

TEST(Presentation, Validation) {
  GroupPresentation p;
  p.num_generators = 1;
  p.relators = {parse_word("b")};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.relators = {};
  p.component_of = {3};
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
