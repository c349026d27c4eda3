#include "twistalex/laurent.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace twistalex;
using twistalex::testing::poly;
using twistalex::testing::random_poly;

namespace {

const Ring F13 = Ring::prime_field(13);
const Ring Z = Ring::integers();

// Cofactor expansion along the first row; independent of det().
LaurentPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::constant(m.ring(), m.num_vars(), 1);
  LaurentPoly out(m.ring(), m.num_vars());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t c = 0; c < n; ++c) {
      if (c != j) cols.push_back(c);
    }
    const LaurentPoly term = m.at(0, j) * cofactor_det(m.select(rows, cols));
    if (j % 2) {
      out -= term;
    } else {
      out += term;
    }
  }
  return out;
}

PolyMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, Ring ring, int lo = -1, int hi = 2) {
  PolyMatrix m(r, c, ring, 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_poly(rng, ring, lo, hi, 3);
  }
  return m;
}

PolyMatrix from_rows(const std::vector<std::vector<std::string>>& rows, Ring ring) {
  PolyMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), ring, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = poly(rows[i][j], ring);
  }
  return m;
}

}  // namespace

TEST(Ring, RejectsComposite) {
  EXPECT_THROW(Ring::prime_field(12), std::invalid_argument);
  EXPECT_NO_THROW(Ring::prime_field(31));
}

TEST(LaurentPoly, TextRoundTrip) {
  const LaurentPoly f = poly("1 - 1*t + 1*t^2", Z);
  EXPECT_EQ(f.to_string(), "1 - 1*t + 1*t^2");
  EXPECT_EQ(LaurentPoly::parse(f.to_string(), Z, 1), f);
  const LaurentPoly g = poly("3*t^-2 + 12*t^5", F13);
  EXPECT_EQ(LaurentPoly::parse(g.to_string(), F13, 1), g);
  const LaurentPoly h = LaurentPoly::parse("t1^2*t2 - 1", Z, 2);
  EXPECT_EQ(LaurentPoly::parse(h.to_string(), Z, 2), h);
  EXPECT_EQ(LaurentPoly(Z, 1).to_string(), "0");
  EXPECT_THROW(LaurentPoly::parse("1 + + t", Z, 1), std::invalid_argument);
}

TEST(LaurentPoly, CoefficientsReducedModP) {
  const LaurentPoly f = poly("-1 + 14*t", F13);
  EXPECT_EQ(f.coeff({0}), 12);
  EXPECT_EQ(f.coeff({1}), 1);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(NormalizeUnit, Examples) {
  EXPECT_TRUE(canonical(LaurentPoly(F13, 1)).is_zero());
  // 12 t^-2 + t^-1 -> 1 + 12 t
  const NormalizedPoly n = normalize_unit(poly("12*t^-2 + 1*t^-1", F13));
  EXPECT_EQ(n.poly, poly("1 + 12*t", F13));
  EXPECT_EQ(n.scalar, 12);
  EXPECT_EQ(n.shift, Exponents{2});
  // -t^3 + t^4 over Z -> 1 - t
  EXPECT_EQ(canonical(poly("-1*t^3 + 1*t^4", Z)), poly("1 - 1*t", Z));
}

TEST(NormalizeUnit, Mirror) {
  const LaurentPoly f = poly("1 + 2*t + 5*t^2", F13);
  EXPECT_TRUE(equal_up_to_units_and_mirror(f, poly("5 + 2*t + 1*t^2", F13)));
  EXPECT_FALSE(equal_up_to_units(f, poly("5 + 2*t + 1*t^2", F13)));
  EXPECT_EQ(mirror_canonical(f), mirror_canonical(f.inverted()));
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd_polys(poly("-1 + 1*t^2", F13), poly("-1 + 1*t^3", F13)), poly("1 + 12*t", F13));
  const LaurentPoly f = poly("3 + 5*t", F13);
  EXPECT_EQ(gcd_polys(f, LaurentPoly(F13, 1)), canonical(f));
  EXPECT_EQ(gcd_polys(poly("2 + 2*t", Z), poly("-4 + 4*t^2", Z)), poly("2 + 2*t", Z));
  EXPECT_TRUE(gcd_polys(LaurentPoly(Z, 1), LaurentPoly(Z, 1)).is_zero());
}

TEST(Gcd, MultivariableExamples) {
  const LaurentPoly a = LaurentPoly::parse("t1*t2 - 1", Z, 2);
  const LaurentPoly b = LaurentPoly::parse("t1 + 1", Z, 2);
  const LaurentPoly c = LaurentPoly::parse("t2 - 3", Z, 2);
  EXPECT_TRUE(equal_up_to_units(gcd_polys(a * b, a * c), a));
  EXPECT_TRUE(gcd_polys(b, c).is_unit());
}

TEST(Gcd, CommonFactorProperty) {
  std::mt19937 rng(7);
  for (const Ring ring : {F13, Z}) {
    for (int trial = 0; trial < 40; ++trial) {
      const LaurentPoly f = random_poly(rng, ring, 0, 3), g = random_poly(rng, ring, 0, 3);
      const LaurentPoly h = random_poly(rng, ring, -1, 2);
      if (h.is_zero() || (f.is_zero() && g.is_zero())) continue;
      EXPECT_TRUE(equal_up_to_units(gcd_polys(f * h, g * h), h * gcd_polys(f, g)))
          << f.to_string() << " | " << g.to_string() << " | " << h.to_string();
    }
  }
}

TEST(Gcd, ReductionModPDividesFieldGcd) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const LaurentPoly common = random_poly(rng, Z, 0, 2);
    const LaurentPoly f = common * random_poly(rng, Z, 0, 2), g = common * random_poly(rng, Z, 0, 2);
    if (f.is_zero() || g.is_zero()) continue;
    const LaurentPoly gz = gcd_polys(f, g).reduced(F13);
    const LaurentPoly gp = gcd_polys(f.reduced(F13), g.reduced(F13));
    if (gz.is_zero() || gp.is_zero()) continue;
    EXPECT_TRUE(divide_exact(gp, gz).has_value()) << gz.to_string() << " vs " << gp.to_string();
  }
}

TEST(DivideExact, Basics) {
  const LaurentPoly a = poly("1 - 1*t + 1*t^2", Z), b = poly("1 + 1*t", Z);
  EXPECT_EQ(*divide_exact(a * b, b), a);
  EXPECT_FALSE(divide_exact(a, b).has_value());
  EXPECT_EQ(*divide_exact(poly("2*t^-3", Z), poly("1*t^-1", Z)), poly("2*t^-2", Z));
  EXPECT_FALSE(divide_exact(poly("3", Z), poly("2", Z)).has_value());
}

TEST(Det, Examples) {
  EXPECT_EQ(det(PolyMatrix::identity(3, F13, 1)), poly("1", F13));
  EXPECT_EQ(det(from_rows({{"t - 1", "0"}, {"0", "t + 1"}}, Z)), poly("-1 + t^2", Z));
  EXPECT_TRUE(det(from_rows({{"0"}}, Z)).is_zero());
  EXPECT_EQ(det(PolyMatrix(0, 0, Z, 1)), poly("1", Z));
}

TEST(Det, AgreesWithCofactorExpansion) {
  std::mt19937 rng(3);
  for (const Ring ring : {F13, Z}) {
    for (int n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 6; ++trial) {
        const PolyMatrix m = random_matrix(rng, n, n, ring);
        EXPECT_EQ(det(m), cofactor_det(m)) << ring.name() << " n=" << n;
      }
    }
  }
}

TEST(Det, MultivariableAgreesWithCofactorExpansion) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-2, 2), e(-1, 1);
  for (int n = 1; n <= 3; ++n) {
    PolyMatrix m(n, n, Z, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int t = 0; t < 3; ++t) m.at(i, j).add_term({e(rng), e(rng)}, c(rng));
      }
    }
    EXPECT_EQ(det(m), cofactor_det(m));
  }
}

TEST(Det, LargeIntegerCoefficients) {
  // Entries big enough that the multimodular route needs several primes.
  PolyMatrix m(3, 3, Z, 1);
  const Integer big("123456789012345678901234567");
  m.at(0, 0) = LaurentPoly::monomial(Z, 1, {1}, big);
  m.at(0, 1) = poly("1", Z);
  m.at(1, 1) = LaurentPoly::monomial(Z, 1, {0}, big) + poly("t", Z);
  m.at(2, 2) = poly("-7 + t^-2", Z);
  m.at(2, 0) = poly("3", Z);
  EXPECT_EQ(det(m), cofactor_det(m));
}

TEST(Det, Multiplicativity) {
  std::mt19937 rng(9);
  for (const Ring ring : {F13, Z}) {
    for (int n = 2; n <= 3; ++n) {
      for (int trial = 0; trial < 8; ++trial) {
        const PolyMatrix a = random_matrix(rng, n, n, ring), b = random_matrix(rng, n, n, ring);
        EXPECT_EQ(det(a * b), det(a) * det(b));
      }
    }
  }
}

TEST(GcdOfMinors, Examples) {
  EXPECT_EQ(gcd_of_minors(from_rows({{"t - 1", "1"}, {"0", "0"}}, F13), 1), poly("1", F13));
  EXPECT_EQ(gcd_of_minors(from_rows({{"t - 1", "0"}, {"0", "t - 1"}}, F13), 2), canonical(poly("1 - 2*t + t^2", F13)));
  EXPECT_EQ(gcd_of_minors(from_rows({{"t"}}, Z), 0), poly("1", Z));
  EXPECT_TRUE(gcd_of_minors(from_rows({{"0", "0"}}, Z), 1).is_zero());
}

TEST(ModuleOrder, Examples) {
  // B2 = [t - 1], B1 = zero 1x1.
  EXPECT_EQ(module_order_pid(from_rows({{"t - 1"}}, F13), from_rows({{"0"}}, F13)), poly("1 + 12*t", F13));
  // B2 with no rows, B1 injective: zero module.
  EXPECT_EQ(module_order_pid(PolyMatrix(0, 1, F13, 1), from_rows({{"t + 2"}}, F13)), poly("1", F13));
  EXPECT_EQ(module_order_pid(from_rows({{"t - 1", "0"}, {"0", "t - 1"}}, F13), from_rows({{"0"}, {"0"}}, F13)),
            canonical(poly("1 - 2*t + t^2", F13)));
  // Positive rank: nothing kills the free summand.
  EXPECT_TRUE(module_order_pid(from_rows({{"t - 1", "0"}}, F13), from_rows({{"0"}, {"0"}}, F13)).is_zero());
}

TEST(ModuleOrder, RejectsNonComplex) {
  EXPECT_THROW(module_order_pid(from_rows({{"1"}}, F13), from_rows({{"1"}}, F13)), std::logic_error);
  EXPECT_THROW(module_order_pid(from_rows({{"1"}}, Z), from_rows({{"0"}}, Z)), std::invalid_argument);
}

// ker(B1)/im(B2) versus gcd of maximal minors of a presentation matrix of the
// same quotient. B1 = [[u], [v]] with u, v coprime has kernel spanned by
// (v, -u), so im(B2) = rows c_i (v, -u) and the quotient is presented by the
// column (c_i).
TEST(ModuleOrder, AgreesWithMinorsOfKernelCoordinates) {
  std::mt19937 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 25; ++trial) {
    const LaurentPoly u = random_poly(rng, F13, 0, 2), v = random_poly(rng, F13, 0, 2);
    if (u.is_zero() || v.is_zero() || !gcd_polys(u, v).is_unit()) continue;
    PolyMatrix b1(2, 1, F13, 1), b2(3, 2, F13, 1), coords(3, 1, F13, 1);
    b1.at(0, 0) = u;
    b1.at(1, 0) = v;
    for (int i = 0; i < 3; ++i) {
      const LaurentPoly c = random_poly(rng, F13, 0, 2);
      coords.at(i, 0) = c;
      b2.at(i, 0) = c * v;
      b2.at(i, 1) = -(c * u);
    }
    EXPECT_EQ(module_order_pid(b2, b1), gcd_of_minors(coords, 1));
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(ModuleOrder, DiagonalConjugatedByUnimodular) {
  // Order of coker(U D V) equals the product of D's diagonal.
  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix d(3, 3, F13, 1);
    LaurentPoly expected = poly("1", F13);
    for (int i = 0; i < 3; ++i) {
      d.at(i, i) = random_poly(rng, F13, 0, 2);
      if (d.at(i, i).is_zero()) d.at(i, i) = poly("1 + t", F13);
      expected = expected * d.at(i, i);
    }
    PolyMatrix u = PolyMatrix::identity(3, F13, 1), v = PolyMatrix::identity(3, F13, 1);
    u.at(0, 1) = random_poly(rng, F13, 0, 1);
    u.at(2, 0) = random_poly(rng, F13, -1, 1);
    v.at(1, 2) = random_poly(rng, F13, 0, 2);
    v.at(2, 0) = poly("t^3", F13);
    const PolyMatrix m = u * d * v;
    EXPECT_EQ(module_order_pid(m, PolyMatrix(3, 0, F13, 1)), canonical(expected));
  }
}

TEST(RankPid, Basics) {
  EXPECT_EQ(rank_pid(from_rows({{"t", "1"}, {"t^2", "t"}}, F13)), 1u);
  EXPECT_EQ(rank_pid(PolyMatrix::identity(4, F13, 1)), 4u);
}
