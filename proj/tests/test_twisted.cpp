#include "twistalex/twisted.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace twistalex;
using twistalex::testing::fixtures;
using twistalex::testing::knot;
using twistalex::testing::poly;

namespace {

const Ring Z = Ring::integers();
const Ring F13 = Ring::prime_field(13);

std::vector<Rep> class_reps(const GroupPresentation& p, int k) {
  std::vector<Rep> out;
  for (const auto& c : conjugacy_classes(enumerate_homs(p, k))) out.push_back(c.representative);
  return out;
}

Permutation random_perm(std::mt19937& rng, int k) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

bool same_matrix(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!(a.at(i, j) == b.at(i, j))) return false;
    }
  }
  return true;
}

LaurentPoly order_of(const GroupPresentation& p, const Rep& r, Ring ring) {
  return *twisted_alexander(p, r, abelianization_map(p), ring).order;
}

const std::vector<std::string> kSmallKnots = {"unknot", "trefoil", "figure8", "3_1", "4_1", "5_2", "5_1", "6_1"};

}  // namespace

TEST(BuildComplex, ShapesAndErrors) {
  const GroupPresentation p = knot("trefoil");
  const Rep r{3, {Permutation::parse_cycles("(0 1)", 3), Permutation::parse_cycles("(1 2)", 3)}};
  const TwistedComplex c = build_complex(p, r, abelianization_map(p), F13);
  EXPECT_EQ(c.b2.rows(), 3u);
  EXPECT_EQ(c.b2.cols(), 6u);
  EXPECT_EQ(c.b1.rows(), 6u);
  EXPECT_EQ(c.b1.cols(), 3u);
  const Rep bad{3, {Permutation::parse_cycles("(0 1)", 3), Permutation::parse_cycles("(0 1 2)", 3)}};
  EXPECT_THROW(build_complex(p, bad, abelianization_map(p), F13), std::invalid_argument);
  EXPECT_THROW(build_complex(p, trivial_rep(3, 2), abelianization_map(p), F13), std::invalid_argument);
  GroupPresentation deficient = p;
  deficient.relators.push_back(p.relators[0]);
  EXPECT_THROW(build_complex(deficient, trivial_rep(2, 2), abelianization_map(p), F13), std::invalid_argument);
}

TEST(BuildComplex, RepresentWordIsMultiplicative) {
  const GroupPresentation p = knot("figure8");
  const PhiMap phi = abelianization_map(p);
  std::mt19937 rng(11);
  for (const Rep& r : class_reps(p, 4)) {
    for (int i = 0; i < 10; ++i) {
      FreeWord u, v;
      for (int j = 0; j < 4; ++j) u.push_back({static_cast<int>(rng() % p.num_generators), rng() % 2 ? 1 : -1});
      for (int j = 0; j < 4; ++j) v.push_back({static_cast<int>(rng() % p.num_generators), rng() % 2 ? 1 : -1});
      EXPECT_TRUE(same_matrix(represent_word(concat(u, v), r, phi, Z),
                              represent_word(u, r, phi, Z) * represent_word(v, r, phi, Z)));
    }
  }
}

TEST(ChainCondition, EveryFixtureAndClass) {
  for (const auto& rec : fixtures()) {
    const GroupPresentation p = rec.presentation();
    const PhiMap phi = abelianization_map(p);
    const int kmax = p.num_generators <= 4 ? 4 : 3;
    for (int k = 1; k <= kmax; ++k) {
      for (const Rep& r : class_reps(p, k)) {
        for (Ring ring : {Z, F13}) {
          const TwistedComplex c = build_complex(p, r, phi, ring);
          EXPECT_TRUE((c.b2 * c.b1).is_zero()) << rec.name << " k=" << k << " " << to_string(r);
        }
      }
    }
  }
}

TEST(Delta0, Examples) {
  const GroupPresentation p = knot("trefoil");
  const PhiMap phi = abelianization_map(p);
  EXPECT_EQ(delta0(p, trivial_rep(2, 1), phi, Z), canonical(poly("-1 + t", Z)));
  // Two fixed points: (t - 1)^2.
  EXPECT_EQ(delta0(p, trivial_rep(2, 2), phi, Z), canonical(poly("1 - 2*t + t^2", Z)));
  // Both meridians act as one transposition: a single orbit with stabilizer phi-image 2Z.
  const Rep swap{2, {Permutation::parse_cycles("(0 1)", 2), Permutation::parse_cycles("(0 1)", 2)}};
  EXPECT_EQ(delta0(p, swap, phi, Z), canonical(poly("-1 + t^2", Z)));
  EXPECT_EQ(delta0(p, swap, phi, F13), canonical(poly("-1 + t^2", F13)));
}

TEST(Delta0, OrbitFormulaMatchesMinors) {
  for (const std::string& name : kSmallKnots) {
    const GroupPresentation p = knot(name);
    const PhiMap phi = abelianization_map(p);
    for (int k = 1; k <= 4; ++k) {
      for (const Rep& r : class_reps(p, k)) {
        const TwistedComplex c = build_complex(p, r, phi, Z);
        EXPECT_EQ(delta0(c), gcd_of_minors(c.b1, static_cast<std::size_t>(k))) << name << " " << to_string(r);
      }
    }
  }
}

TEST(Wada, ExamplesAndVanishingDenominators) {
  const GroupPresentation p = knot("trefoil");
  const TwistedComplex c = build_complex(p, trivial_rep(2, 1), abelianization_map(p), Z);
  const auto w = wada_pair(c);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->column, 0);
  // numerator * delta0 = order * denominator with delta0 = t - 1.
  EXPECT_TRUE(equal_up_to_units(w->numerator * poly("-1 + t", Z), w->denominator * poly("1 - t + t^2", Z)));
  // A presentation whose generator images all fix a point with phi = 0.
  GroupPresentation q;
  q.num_generators = 2;
  q.relators = {parse_word("a B")};
  PhiMap zero{1, {{0}, {0}}};
  const TwistedComplex d = build_complex(q, trivial_rep(2, 1), zero, Z);
  EXPECT_FALSE(wada_pair(d).has_value());
  EXPECT_THROW(twisted_alexander(d), std::runtime_error);
}

TEST(TwistedAlexander, Examples) {
  EXPECT_EQ(order_of(knot("unknot"), trivial_rep(1, 3), Z), poly("1", Z));
  EXPECT_EQ(order_of(knot("unknot"), trivial_rep(1, 3), F13), poly("1", F13));
  EXPECT_EQ(order_of(knot("trefoil"), trivial_rep(2, 1), F13), poly("1 + 12*t + t^2", F13));
  EXPECT_EQ(order_of(knot("11_401"), trivial_rep(knot("11_401").num_generators, 1), F13), poly("1", F13));
  EXPECT_EQ(order_of(knot("11_401"), trivial_rep(knot("11_401").num_generators, 1), Z), poly("1", Z));
  // Over Q the permutation representation splits off the trivial one, so
  // the classical polynomial divides the twisted order.
  const Rep s3{3, {Permutation::parse_cycles("(0 1)", 3), Permutation::parse_cycles("(1 2)", 3)}};
  EXPECT_TRUE(divide_exact(order_of(knot("trefoil"), s3, Z), poly("1 - t + t^2", Z)).has_value());
}

TEST(TwistedAlexander, HopfTwoVariables) {
  const GroupPresentation p = knot("hopf");
  const PhiMap phi = abelianization_map(p);
  ASSERT_EQ(phi.rank, 2);
  for (int k = 1; k <= 3; ++k) {
    for (const Rep& r : class_reps(p, k)) {
      const TwistedResult res = twisted_alexander(p, r, phi, Z);
      ASSERT_TRUE(res.order.has_value()) << to_string(r);
      EXPECT_TRUE(res.order->is_unit()) << to_string(r) << " " << res.order->to_string();
    }
  }
}

TEST(Properties, ConjugationInvariance) {
  std::mt19937 rng(12);
  for (const std::string& name : kSmallKnots) {
    const GroupPresentation p = knot(name);
    for (int k = 2; k <= 4; ++k) {
      for (const Rep& r : class_reps(p, k)) {
        const Rep c = conjugate(r, random_perm(rng, k));
        for (Ring ring : {Z, F13}) EXPECT_EQ(order_of(p, r, ring), order_of(p, c, ring)) << name << " " << to_string(r);
      }
    }
  }
}

TEST(Properties, WadaColumnIndependence) {
  for (const std::string& name : kSmallKnots) {
    const GroupPresentation p = knot(name);
    const PhiMap phi = abelianization_map(p);
    for (int k = 1; k <= 3; ++k) {
      for (const Rep& r : class_reps(p, k)) {
        const TwistedComplex c = build_complex(p, r, phi, Z);
        const WadaPair first = wada_pair_at(c, 0);
        for (int j = 1; j < c.g; ++j) {
          const WadaPair other = wada_pair_at(c, j);
          EXPECT_TRUE(equal_up_to_units(first.numerator * other.denominator, other.numerator * first.denominator))
              << name << " column " << j << " " << to_string(r);
        }
      }
    }
  }
}

TEST(Properties, ModuleOrderMatchesWadaOverFp) {
  for (const std::string& name : kSmallKnots) {
    const GroupPresentation p = knot(name);
    const PhiMap phi = abelianization_map(p);
    for (int k = 1; k <= 4; ++k) {
      for (const Rep& r : class_reps(p, k)) {
        const TwistedComplex c = build_complex(p, r, phi, F13);
        const TwistedResult res = twisted_alexander(c);
        ASSERT_EQ(res.route, TwistedResult::Route::ModuleOrder);
        const auto w = wada_pair(c);
        ASSERT_TRUE(w.has_value());
        const auto q = divide_exact(w->numerator * res.delta0, w->denominator);
        ASSERT_TRUE(q.has_value()) << name << " " << to_string(r);
        EXPECT_EQ(canonical(*q), *res.order) << name << " " << to_string(r);
      }
    }
  }
}

TEST(Properties, IntegerResultReducesModP) {
  for (std::uint32_t prime : {13u, 31u}) {
    const Ring fp = Ring::prime_field(prime);
    for (const std::string& name : kSmallKnots) {
      const GroupPresentation p = knot(name);
      const PhiMap phi = abelianization_map(p);
      for (int k = 1; k <= 4; ++k) {
        for (const Rep& r : class_reps(p, k)) {
          const TwistedComplex cz = build_complex(p, r, phi, Z), cp = build_complex(p, r, phi, fp);
          // Determinants commute with reduction.
          const WadaPair wz = wada_pair_at(cz, 0), wp = wada_pair_at(cp, 0);
          EXPECT_EQ(wz.numerator.reduced(fp), wp.numerator);
          EXPECT_EQ(wz.denominator.reduced(fp), wp.denominator);
          // Orders agree whenever no Z-torsion hides under the reduction.
          const LaurentPoly oz = *twisted_alexander(cz).order, op = *twisted_alexander(cp).order;
          EXPECT_TRUE(equal_up_to_units(oz.reduced(fp), op)) << name << " p=" << prime << " " << to_string(r);
        }
      }
    }
  }
}
