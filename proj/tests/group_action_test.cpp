#include "fqav/group_action.hpp"

#include <gtest/gtest.h>

#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fqav {
namespace {

using testing::aut;
using testing::blocks;
using testing::linear;
using testing::point;
using testing::q;

std::set<AffineMap> as_set(const std::vector<AffineMap>& v) { return {v.begin(), v.end()}; }

TEST(Closure, GalleryOrders) {
  EXPECT_EQ(testing::ex51().order(), 4u);
  EXPECT_EQ(testing::ex52().order(), 4u);
  EXPECT_EQ(testing::bielliptic().order(), 2u);
  EXPECT_EQ(testing::kummer().order(), 2u);
  EXPECT_EQ(testing::p1_from_ei().order(), 4u);
}

TEST(Closure, BiellipticSquareIsIdentity) {
  const FiniteGroupAction g = testing::bielliptic();
  const AffineMap h = g.lattice_action().element(1);
  EXPECT_TRUE((h * h).is_identity());
}

TEST(Closure, MatchesNaiveClosure) {
  for (const auto& [name, g] : testing::gallery()) {
    std::vector<AffineMap> gens;
    for (const auto& x : g.generators()) gens.push_back(x.to_map(g.variety()));
    EXPECT_EQ(as_set(g.lattice_action().elements()),
              as_set(oracle::naive_closure(gens, g.variety().lattice_rank(), 1000)))
        << name;
  }
}

TEST(Closure, IdentityFirstAndDeterministic) {
  const FiniteGroupAction a = testing::ex52(), b = testing::ex52();
  EXPECT_TRUE(a.lattice_action().element(0).is_identity());
  EXPECT_EQ(a.lattice_action().elements(), b.lattice_action().elements());
}

TEST(Closure, CapExceeded) {
  // t_(1/5) generates a group of order 5
  const AbelianVarietyModel a = testing::ei();
  try {
    close_group(a, {aut(EndoBlockMatrix::identity(1), point({"1/5", "0"}))}, 4);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_STREQ(e.what(), "group order exceeds cap");
  }
  EXPECT_EQ(close_group(a, {aut(EndoBlockMatrix::identity(1), point({"1/5", "0"}))}, 5).order(),
            5u);
}

TEST(Closure, InfiniteOrderHolonomy) {
  const AbelianVarietyModel a({EllipticFactor::generic("E"), EllipticFactor::generic("E")});
  EXPECT_THROW(close_group(a, {linear(blocks({{{1, 0}, {1, 0}}, {{0, 0}, {1, 0}}}))}),
               MathError);
}

TEST(Closure, CyclicOrderIsMultiplicativeOrder) {
  testing::Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const AbelianVarietyModel a = testing::random_model(rng, 3);
    const EndoBlockMatrix phi = testing::random_finite_order(rng, a, 12);
    const FiniteGroupAction g = close_group(a, {linear(phi)});
    EXPECT_EQ(g.order(), multiplicative_order(rational_rep(a, phi)));
  }
}

TEST(Closure, AssociativeAndClosedOnRandomTriples) {
  testing::Rng rng(43);
  for (const auto& [name, g] : testing::gallery()) {
    const SublatticeAction& s = g.lattice_action();
    for (int t = 0; t < 20; ++t) {
      const AffineMap& x = s.element(rng() % s.order());
      const AffineMap& y = s.element(rng() % s.order());
      const AffineMap& z = s.element(rng() % s.order());
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_TRUE(s.index_of(x * y));
      EXPECT_TRUE(s.index_of(x.inverse()));
    }
  }
}

TEST(FixedLocus, ExampleOne) {
  const FixedLocus f = fixed_locus(testing::ei2(), linear(blocks({{{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}})));
  ASSERT_FALSE(f.empty);
  EXPECT_EQ(f.dim, 0);
  EXPECT_EQ(f.components.size(), 4u);
}

TEST(FixedLocus, ExampleTwoSquare) {
  const FixedLocus f =
      fixed_locus(testing::e_times_ei(), linear(blocks({{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}})));
  ASSERT_FALSE(f.empty);
  EXPECT_EQ(f.dim, 1);
  ASSERT_EQ(f.components.size(), 4u);
  for (const auto& c : f.components)
    EXPECT_EQ(c.lattice(), Lattice(4, IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}}));
}

TEST(FixedLocus, PureTranslationIsEmpty) {
  const FixedLocus f = fixed_locus(testing::ei(), aut(EndoBlockMatrix::identity(1), point({"1/3", "0"})));
  EXPECT_TRUE(f.empty);
  EXPECT_EQ(f.dim, -1);
}

TEST(FixedLocus, KummerSixteenPoints) {
  const FixedLocus f = fixed_locus(testing::e_times_f(), linear(EndoBlockMatrix::scalar(2, -1)));
  EXPECT_EQ(f.dim, 0);
  EXPECT_EQ(f.components.size(), 16u);
  const auto brute = oracle::grid_fixed_points(
      AffineMap{-IntMatrix::identity(4), TorsionPoint::zero(4)}, 2);
  EXPECT_EQ(brute.size(), 16u);
}

TEST(FixedLocus, ConjugationMovesFixedLocus) {
  for (const auto& [name, g] : testing::gallery()) {
    const SublatticeAction& s = g.lattice_action();
    for (const auto& x : s.elements())
      for (const auto& h : s.elements()) {
        const FixedLocus lhs = fixed_locus(h * x * h.inverse());
        std::set<SubtorusTranslate> moved;
        for (const auto& c : fixed_locus(x).components)
          moved.insert(c.transformed(h.linear, h.translation));
        EXPECT_EQ(std::set<SubtorusTranslate>(lhs.components.begin(), lhs.components.end()),
                  moved)
            << name;
      }
  }
}

TEST(PointwiseStabilizer, ExampleTwoDivisor) {
  const FiniteGroupAction g = testing::ex52();
  const SubtorusTranslate t(Lattice(4, IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}}),
                            TorsionPoint::zero(4));
  const Stabilizer s = pointwise_stabilizer(t, g.lattice_action());
  EXPECT_EQ(s.e, 2u);
  const IntMatrix g2 = rational_rep(g.variety(), blocks({{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}));
  std::set<IntMatrix> linear_parts;
  for (std::size_t i : s.subgroup) linear_parts.insert(g.lattice_action().element(i).linear);
  EXPECT_EQ(linear_parts, (std::set<IntMatrix>{IntMatrix::identity(4), g2}));
}

TEST(PointwiseStabilizer, OriginUnderLinearGroup) {
  const FiniteGroupAction g = testing::ex51();
  const SubtorusTranslate origin(Lattice(4), TorsionPoint::zero(4));
  EXPECT_EQ(pointwise_stabilizer(origin, g.lattice_action()).e, 4u);
}

TEST(PointwiseStabilizer, TrivialStabilizer) {
  const FiniteGroupAction g = testing::ex51();
  // a 3-torsion point is moved by every nontrivial power of i x i
  const SubtorusTranslate p(Lattice(4), point({"1/3", "0", "0", "0"}));
  EXPECT_EQ(pointwise_stabilizer(p, g.lattice_action()).e, 1u);
}

TEST(NormalizeTranslations, HalfShiftOfMinusOne) {
  const AbelianVarietyModel a({EllipticFactor::generic("E")});
  const FiniteGroupAction g = close_group(a, {aut(EndoBlockMatrix::scalar(1, -1), point({"1/2", "0"}))});
  const NormalizedTranslations r = normalize_translations(g);
  EXPECT_EQ(r.p, point({"1/4", "0"}));
  for (const auto& h : g.lattice_action().elements()) EXPECT_EQ(r.p - h(r.p), TorsionPoint::zero(2));
  for (const auto& h : r.conjugated.lattice_action().elements())
    EXPECT_TRUE(h.translation.is_zero());
}

TEST(NormalizeTranslations, ZeroTranslations) {
  for (const auto& g : {testing::ex51(), testing::ex52()}) {
    const NormalizedTranslations r = normalize_translations(g);
    EXPECT_TRUE(r.p.is_zero());
    EXPECT_EQ(r.conjugated.lattice_action().elements(), g.lattice_action().elements());
  }
}

TEST(Age, Examples) {
  const FieldPtr f = CycloField::make(12);
  EXPECT_EQ(age(testing::ei2(), linear(blocks({{{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}})), f), q("1/2"));
  EXPECT_EQ(age(testing::e_times_f(), linear(EndoBlockMatrix::scalar(2, -1)), f), 1);
  EXPECT_EQ(age(testing::e_times_ei(), linear(blocks({{{-1, 0}, {0, 0}}, {{0, 0}, {0, 1}}})), f),
            q("3/4"));
  EXPECT_EQ(age(testing::ei2(), linear(EndoBlockMatrix::identity(2)), f), 0);
}

TEST(Age, FieldTooSmall) {
  // order 8: [[0, 1], [i, 0]] on E_i^2
  const AbelianVarietyModel a = testing::ei2();
  const EndoBlockMatrix phi = blocks({{{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}});
  ASSERT_EQ(multiplicative_order(rational_rep(a, phi)), 8u);
  try {
    age(a, linear(phi), CycloField::make(12));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_STREQ(e.what(), "field too small");
  }
  EXPECT_EQ(age(a, linear(phi), CycloField::make(24)),
            oracle::age_from_spectrum(oracle::analytic_spectrum(a, phi, 8)));
}

TEST(Age, RandomAgainstSpectrumAndInverse) {
  testing::Rng rng(47);
  for (int t = 0; t < 40; ++t) {
    const AbelianVarietyModel a = testing::random_model(rng, 3);
    const EndoBlockMatrix phi = testing::random_finite_order(rng, a, 12);
    const FiniteGroupAction g = close_group(a, {linear(phi)});
    const FieldPtr f = CycloField::make(natural_conductor(g));
    const std::size_t ord = g.order();
    const auto spectrum = oracle::analytic_spectrum(a, phi, ord);
    const Rational forward = age(a, linear(phi), f);
    EXPECT_EQ(forward, oracle::age_from_spectrum(spectrum));
    const AffineMap inv_map = linear(phi).to_map(a).inverse();
    const AffineAutomorphism inv{EndoBlockMatrix::from_rational_rep(a, inv_map.linear),
                                 inv_map.translation};
    const long nontrivial = static_cast<long>(a.dim()) - spectrum[0];
    EXPECT_EQ(forward + age(a, inv, f), nontrivial);
  }
}

TEST(DescendMultiplication, Examples) {
  const PolarizedMultiplication zero = descend_multiplication(testing::ex52().lattice_action());
  EXPECT_EQ(zero.m, 2);
  EXPECT_TRUE(zero.commutes);
  EXPECT_EQ(descend_multiplication(testing::bielliptic().lattice_action()).m, 3);
  const PolarizedMultiplication e51 = descend_multiplication(testing::ex51().lattice_action());
  EXPECT_EQ(e51.m, 2);
  // [2] (i x i) = (i x i) [2] by hand
  const AffineMap g = testing::ex51().lattice_action().element(1);
  const AffineMap two{Integer(2) * IntMatrix::identity(4), TorsionPoint::zero(4)};
  EXPECT_EQ(two * g, g * two);
}

TEST(DescendMultiplication, RandomGroupsCommute) {
  testing::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const AbelianVarietyModel a = testing::random_model(rng, 2);
    const EndoBlockMatrix phi = testing::random_finite_order(rng, a, 6);
    const TorsionPoint tr = testing::random_translation(rng, a.lattice_rank(), {1, 2, 3});
    const FiniteGroupAction g = close_group(a, {aut(phi, tr)}, 200);
    const PolarizedMultiplication m = descend_multiplication(g.lattice_action());
    for (const auto& h : g.lattice_action().elements()) {
      EXPECT_EQ((m.m - 1) * h.translation, TorsionPoint::zero(a.lattice_rank()));
      const AffineMap mult{m.m * IntMatrix::identity(a.lattice_rank()),
                           TorsionPoint::zero(a.lattice_rank())};
      EXPECT_EQ(mult * h, h * mult);
    }
  }
}

TEST(HolonomyGroup, OrderDividesGroupOrder) {
  for (const auto& [name, g] : testing::gallery())
    EXPECT_EQ(g.order() % g.holonomy_group().size(), 0u) << name;
}

}  // namespace
}  // namespace fqav
