#include <gtest/gtest.h>

#include "widthlab/errors.hpp"
#include "widthlab/sampling.hpp"
#include "widthlab/valuation.hpp"

using namespace widthlab;

namespace {

RationalFunction t() { return RationalFunction::t(); }
const auto kQt = [] { return TowerNode<RationalFunction>::base(); };

}  // namespace

TEST(TAdic, Basics) {
  EXPECT_EQ(t_adic_valuation(t()), ValuationValue(1));
  EXPECT_EQ(t_adic_valuation(RationalFunction(2)), ValuationValue(0));
  EXPECT_EQ(t_adic_valuation(t().pow(5) / (t() + 1)), ValuationValue(5));
  EXPECT_TRUE(t_adic_valuation(RationalFunction()).is_infinite());
}

TEST(TAdic, SurjectiveOntoIntegers) {
  for (long k = -8; k <= 8; ++k) EXPECT_EQ(t_adic_valuation(RationalFunction::t_power(k)), ValuationValue(k));
}

TEST(PAdic, Basics) {
  EXPECT_EQ(p_adic_valuation(make_rational(3, 4), 2), ValuationValue(-2));
  EXPECT_EQ(p_adic_valuation(Rational(1), 3), ValuationValue(0));
  EXPECT_EQ(p_adic_valuation(make_rational(50, 7), 5), ValuationValue(2));
  EXPECT_THROW(p_adic_valuation(Rational(1), 6), Error);
}

TEST(ValuationValue, TextAndOrder) {
  EXPECT_EQ(to_text(ValuationValue(make_rational(3, 2))), "3/2");
  EXPECT_EQ(to_text(ValuationValue(-2)), "-2/1");
  EXPECT_EQ(to_text(ValuationValue::infinity()), "inf");
  EXPECT_EQ(valuation_from_text("-3/4"), ValuationValue(make_rational(-3, 4)));
  EXPECT_LT(ValuationValue(100), ValuationValue::infinity());
  EXPECT_TRUE(ValuationValue::infinity().abs_at_most(Rational(0)));
}

TEST(ExtendToTower, RamifiedHalfInteger) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  auto tw = adjoin_sqrt(kQt(), QtAlgebraic(t().pow(3))).tower;
  auto ext = extend_to_tower(vm, tw);
  ASSERT_EQ(ext.certificates().size(), 1u);
  EXPECT_EQ(ext.certificates()[0].kind, LevelCertificate::Kind::Ramified);
  QtAlgebraic s = QtAlgebraic::generator(tw);
  EXPECT_EQ(ext(s), ValuationValue(make_rational(3, 2)));
  EXPECT_EQ(ext(s + 1), ValuationValue(0));
}

TEST(ExtendToTower, EvenCaseValidatedBySampling) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  QtAlgebraic d(RationalFunction(1) - RationalFunction::t_power(-4));
  auto tw = adjoin_sqrt(kQt(), d).tower;
  auto ext = extend_to_tower(vm, tw, 3);
  EXPECT_EQ(ext.certificates()[0].kind, LevelCertificate::Kind::ValidatedBySampling);
  EXPECT_EQ(ext.certificates()[0].samples, kValidationSamples);
  EXPECT_EQ(ext(QtAlgebraic::generator(tw)), ValuationValue(-2));
}

TEST(ExtendToTower, TwoAdicSqrtTwo) {
  auto vm = ValuationMap<Rational>::p_adic(2);
  auto tw = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(2)).tower;
  auto ext = extend_to_tower(vm, tw);
  EXPECT_EQ(ext(QAlgebraic::generator(tw)), ValuationValue(make_rational(1, 2)));
}

TEST(ExtendToTower, SplitPrimeIsDetected) {
  // 17 is a square in Q_2, so v_2 has two extensions to Q(sqrt 17)
  auto vm = ValuationMap<Rational>::p_adic(2);
  auto tw = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(17)).tower;
  try {
    extend_to_tower(vm, tw, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUniqueExtension);
  }
}

TEST(ExtendToTower, ElementOutsideTowerNotCovered) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  auto tw = adjoin_sqrt(kQt(), QtAlgebraic(t())).tower;
  try {
    vm(QtAlgebraic::generator(tw));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCovered);
  }
}

TEST(TowerValuation, WitnessAndZero) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  EXPECT_EQ(vm(QtAlgebraic(RationalFunction::t_power(-1))), ValuationValue(-1));
  EXPECT_TRUE(vm(QtAlgebraic(0)).is_infinite());
}

TEST(NormCompare, Membership) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  EXPECT_TRUE(norm_compare_inside(vm, QtAlgebraic(t()), Rational(1)));
  EXPECT_FALSE(norm_compare_inside(vm, QtAlgebraic(t().pow(2)), Rational(1)));
  EXPECT_TRUE(norm_compare_inside(vm, QtAlgebraic(1), Rational(0)));
  EXPECT_TRUE(LogNorm{ValuationValue(1)} <= LogNorm{ValuationValue(0)});
}

namespace {

template <class F>
void check_valuation_laws(const ValuationMap<F>& vm, std::uint64_t seed, int pairs) {
  Prng rng(seed);
  for (int i = 0; i < pairs; ++i) {
    auto x = random_tower_element(vm.tower(), rng);
    auto y = random_tower_element(vm.tower(), rng);
    auto wx = vm(x), wy = vm(y);
    ASSERT_EQ(vm(x * y), wx + wy) << to_text(x) << " " << to_text(y);
    auto ws = vm(x + y);
    ASSERT_GE(ws, min(wx, wy));
    if (wx != wy) ASSERT_EQ(ws, min(wx, wy));
    if (!wx.is_infinite()) {
      Rational scaled = wx.value() * Rational(Integer(1) << vm.granularity_exponent());
      ASSERT_EQ(scaled.get_den(), 1);
    }
  }
}

}  // namespace

TEST(ValuationLaws, TAdicTowers) {
  auto vm = ValuationMap<RationalFunction>::t_adic();
  check_valuation_laws(vm, 1, 1000);
  auto tw1 = adjoin_sqrt(kQt(), QtAlgebraic(t().pow(3))).tower;
  check_valuation_laws(extend_to_tower(vm, tw1), 2, 1000);
  auto tw2 = adjoin_sqrt(tw1, QtAlgebraic(RationalFunction(1) - RationalFunction::t_power(-4))).tower;
  check_valuation_laws(extend_to_tower(vm, tw2), 3, 1000);
}

TEST(ValuationLaws, PAdicTowers) {
  auto vm = ValuationMap<Rational>::p_adic(3);
  auto tw = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(3)).tower;
  tw = adjoin_sqrt(tw, QAlgebraic(2)).tower;  // 2 is not a square mod 3
  check_valuation_laws(extend_to_tower(vm, tw), 4, 1000);
}
