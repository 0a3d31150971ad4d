#include <gtest/gtest.h>

#include "generators.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/width.hpp"

using namespace widthlab;

namespace {

using M = GroupMatrix<RationalFunction>;
using Q = GroupMatrix<Rational>;

RationalFunction t() { return RationalFunction::t(); }
QtAlgebraic tq(long k) { return QtAlgebraic(RationalFunction::t_power(k)); }
QtAlgebraic zero() { return QtAlgebraic(0L); }

GeneratorSpec<RationalFunction> ball(long r = 1) {
  return GeneratorSpec<RationalFunction>::valuation_ball(ValuationMap<RationalFunction>::t_adic(), Rational(r));
}

void expect_word_in_S(const Word<RationalFunction>& w, const GeneratorSpec<RationalFunction>& spec) {
  for (const auto& f : w.factors) EXPECT_TRUE(is_in_S(f, spec)) << to_text(f);
}

}  // namespace

TEST(GroupMatrix, Invariants) {
  EXPECT_THROW(M(2, {tq(1), zero(), zero(), tq(1)}, GroupTag::SL), Error);
  EXPECT_NO_THROW(M(2, {tq(1), zero(), zero(), tq(1)}, GroupTag::GL));
  EXPECT_THROW(M(2, {zero(), zero(), zero(), zero()}, GroupTag::GL), Error);
  EXPECT_THROW(M(2, {zero(), zero(), zero()}, GroupTag::GL), Error);
  EXPECT_THROW(Q::rotation(QAlgebraic(1), QAlgebraic(1)), Error);
  EXPECT_NO_THROW(Q::rotation(QAlgebraic(make_rational(3, 5)), QAlgebraic(make_rational(4, 5))));
  EXPECT_THROW(M::identity(2) * M::identity(3), Error);
}

TEST(GroupMatrix, InverseAndText) {
  Prng rng(5);
  for (int i = 0; i < 20; ++i) {
    RationalFunction a = widthlab::testing::small_rational_function(rng);
    if (a.is_zero()) continue;
    M g = M::torus(3, 0, 2, QtAlgebraic(a)) * M::elementary(3, 1, 0, QtAlgebraic(widthlab::testing::small_rational_function(rng)));
    EXPECT_TRUE((g * g.inverse()).is_identity());
  }
  EXPECT_EQ(to_text(M::identity(2)), "[[[1],[]],[[],[1]]]");
}

TEST(IsInS, Examples) {
  auto spec = ball();
  EXPECT_TRUE(is_in_S(M::torus(2, 0, 1, tq(1)), spec));
  EXPECT_FALSE(is_in_S(M::elementary(2, 0, 1, tq(2)), spec));
  EXPECT_TRUE(is_in_S(M::identity(2), spec));
  EXPECT_TRUE(is_in_S(M::identity(4), ball(3)));
  EXPECT_THROW(GeneratorSpec<RationalFunction>::valuation_ball(ValuationMap<RationalFunction>::t_adic(),
                                                               make_rational(1, 2)),
               Error);
}

TEST(IsInS, RadiusBallUsesEnclosures) {
  auto spec = GeneratorSpec<Rational>::radius_ball(Rational(2), GroupTag::SL);
  auto tw = adjoin_sqrt(TowerNode<Rational>::base(), QAlgebraic(2)).tower;
  QAlgebraic s = QAlgebraic::generator(tw);
  EXPECT_TRUE(is_in_S(Q::elementary(2, 0, 1, s), spec));
  EXPECT_FALSE(is_in_S(Q::elementary(2, 0, 1, s + 1), spec));
  EXPECT_TRUE(is_in_S(Q::identity(2), spec));
}

TEST(Conjugation, Convention) {
  auto checks = conjugation_convention_check(7, 20);
  ASSERT_EQ(checks.size(), 23u);
  EXPECT_EQ(checks[0].expected, to_text(t() * t()));
  EXPECT_EQ(checks[2].expected, to_text(RationalFunction(1)));
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.lambda << " " << c.mu;
}

TEST(Conjugation, Exponent) {
  EXPECT_EQ(conjugation_exponent(Rational(5)), 2);
  EXPECT_EQ(conjugation_exponent(Rational(-5)), -2);
  EXPECT_EQ(conjugation_exponent(Rational(4)), 2);
  EXPECT_EQ(conjugation_exponent(Rational(1)), 0);
  EXPECT_EQ(conjugation_exponent(Rational(0)), 0);
  EXPECT_EQ(conjugation_exponent(make_rational(7, 2)), 2);
}

TEST(FactorE12, Examples) {
  auto spec = ball();
  Word<RationalFunction> w = factor_E12(tq(5), tq(1), spec);
  EXPECT_EQ(w.length(), 5u);
  EXPECT_EQ(w.factors[2], M::elementary(2, 0, 1, tq(1)));
  EXPECT_EQ(word_evaluate(w), M::elementary(2, 0, 1, tq(5)));
  expect_word_in_S(w, spec);

  w = factor_E12(tq(-1), tq(1), spec);
  EXPECT_EQ(w.length(), 1u);
  EXPECT_EQ(w.factors[0], M::elementary(2, 0, 1, tq(-1)));

  w = factor_E12(QtAlgebraic(0L), tq(1), spec);
  ASSERT_EQ(w.length(), 1u);
  EXPECT_TRUE(w.factors[0].is_identity());

  EXPECT_THROW(factor_E12(tq(3), tq(2), spec), Error);
}

TEST(FactorE12, LengthWithinOneOfValuation) {
  auto spec = ball();
  for (long k = -12; k <= 12; ++k) {
    Word<RationalFunction> w = factor_E12(tq(k), tq(1), spec);
    EXPECT_EQ(word_evaluate(w), M::elementary(2, 0, 1, tq(k)));
    const long len = static_cast<long>(w.length());
    EXPECT_TRUE(len == std::abs(k) || len == std::abs(k) + 1 || (k == 0 && len == 1)) << k << " " << len;
    expect_word_in_S(w, spec);
  }
}

TEST(FactorE12, OverRamifiedTower) {
  auto tw = adjoin_sqrt(TowerNode<RationalFunction>::base(), QtAlgebraic(t())).tower;
  auto vm = extend_to_tower(ValuationMap<RationalFunction>::t_adic(), tw);
  auto spec = GeneratorSpec<RationalFunction>::valuation_ball(vm, Rational(1));
  QtAlgebraic s = QtAlgebraic::generator(tw);  // omega = 1/2
  QtAlgebraic alpha = s.pow(9);
  Word<RationalFunction> w = factor_E12(alpha, tq(1), spec);
  EXPECT_EQ(word_evaluate(w), M::elementary(2, 0, 1, alpha));
  expect_word_in_S(w, spec);
}

TEST(ElementaryDecomposition, Examples) {
  EXPECT_TRUE(elementary_decomposition(M::identity(3)).empty());

  auto d = elementary_decomposition(M::elementary(2, 0, 1, tq(3)));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].i, 0u);
  EXPECT_EQ(d[0].j, 1u);
  EXPECT_EQ(d[0].mu, tq(3));

  M rot(2, {zero(), QtAlgebraic(1L), QtAlgebraic(-1L), zero()}, GroupTag::SL);
  d = elementary_decomposition(rot);
  ASSERT_EQ(d.size(), 3u);
  M prod = M::identity(2);
  for (const auto& x : d) prod = prod * M::elementary(2, x.i, x.j, x.mu);
  EXPECT_EQ(prod, rot);
  EXPECT_EQ(d[0].mu, QtAlgebraic(1L));
  EXPECT_EQ(d[1].mu, QtAlgebraic(-1L));
  EXPECT_EQ(d[2].mu, QtAlgebraic(1L));

  EXPECT_THROW(elementary_decomposition(M::gl_diagonal(2, tq(1))), Error);
}

TEST(ElementaryDecomposition, RandomRoundTrip) {
  Prng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    M g = M::identity(n);
    for (int f = 0; f < 6; ++f) {
      std::size_t i = rng.below(n), j = rng.below(n);
      if (i == j) continue;
      RationalFunction a = widthlab::testing::small_rational_function(rng);
      if (rng.coin() && !a.is_zero()) {
        g = g * M::torus(n, i, j, QtAlgebraic(a));
      } else {
        g = g * M::elementary(n, i, j, QtAlgebraic(a));
      }
    }
    auto d = elementary_decomposition(g);
    EXPECT_LE(d.size(), n * n + 4 * n);
    M prod = M::identity(n);
    for (const auto& x : d) prod = prod * M::elementary(n, x.i, x.j, x.mu);
    EXPECT_EQ(prod, g);
  }
}

TEST(FactorSlN, Examples) {
  auto spec = ball();
  M e13 = M::elementary(3, 0, 2, tq(4));
  Word<RationalFunction> w = factor_slN(e13, spec, tq(1));
  EXPECT_LE(w.length(), 5u);
  EXPECT_EQ(word_evaluate(w), e13);
  expect_word_in_S(w, spec);

  M d = M::torus(2, 0, 1, tq(-1));
  w = factor_slN(d, spec, tq(1));
  ASSERT_EQ(w.length(), 1u);
  EXPECT_EQ(w.factors[0], d);

  EXPECT_EQ(factor_slN(M::identity(2), spec, tq(1)).length(), 0u);
}

TEST(FactorSlN, RandomRoundTripAndBounds) {
  auto spec = ball();
  Prng rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + rng.below(2);
    M g = M::identity(n);
    for (int f = 0; f < 4; ++f) {
      std::size_t i = rng.below(n), j = rng.below(n);
      if (i != j) g = g * M::elementary(n, i, j, tq(rng.uniform(-4, 4)));
    }
    Word<RationalFunction> w = factor_slN(g, spec, tq(1));
    EXPECT_EQ(word_evaluate(w), g);
    expect_word_in_S(w, spec);
    EXPECT_LE(width_lower_bound(g, spec), static_cast<long>(w.length()));
  }
}

TEST(FactorGlN, Examples) {
  auto spec = ball();
  spec.tag = GroupTag::GL;
  spec.extra_gl_diagonals = true;
  M g = M::gl_diagonal(2, tq(3));
  Word<RationalFunction> w = factor_glN(g, spec, tq(1));
  ASSERT_EQ(w.length(), 3u);
  for (const auto& f : w.factors) EXPECT_EQ(f, M::gl_diagonal(2, tq(1)));
  EXPECT_EQ(word_evaluate(w), g);

  QtAlgebraic u(RationalFunction(QPoly{Rational(2), Rational(1)}));  // 2 + t
  w = factor_glN(M::gl_diagonal(2, u), spec, tq(1));
  EXPECT_EQ(w.length(), 1u);

  M sl = M::elementary(2, 0, 1, tq(4));
  EXPECT_EQ(factor_glN(sl, spec, tq(1)).length(), factor_slN(sl, spec, tq(1)).length());

  M mixed(3, {tq(2), tq(1), zero(), zero(), tq(-1), zero(), QtAlgebraic(3L), zero(), QtAlgebraic(1L)}, GroupTag::GL);
  w = factor_glN(mixed, spec, tq(1));
  EXPECT_EQ(word_evaluate(w), mixed);
  for (const auto& f : w.factors) EXPECT_TRUE(is_in_S(f, spec)) << to_text(f);
}

TEST(WidthLowerBound, Valuation) {
  auto spec = ball();
  EXPECT_EQ(width_lower_bound(M::identity(2), spec), 0);
  EXPECT_EQ(width_lower_bound(M::elementary(2, 0, 1, tq(-5)), spec), 5);
  EXPECT_EQ(width_lower_bound(M::torus(2, 0, 1, tq(3)), spec), 3);
  EXPECT_EQ(abs_valuation_bound(M::elementary(2, 0, 1, tq(5)), spec), 5);
  // positive valuation is reachable in two steps: t^5 = (1 + t^5) - 1
  M e = M::elementary(2, 0, 1, tq(5));
  EXPECT_EQ(width_lower_bound(e, spec), 1);
  Word<RationalFunction> two{2, GroupTag::SL,
                             {M::elementary(2, 0, 1, QtAlgebraic(RationalFunction(1) + t().pow(5))),
                              M::elementary(2, 0, 1, QtAlgebraic(-1L))}};
  expect_word_in_S(two, spec);
  EXPECT_EQ(word_evaluate(two), e);
}

TEST(WidthLowerBound, RadiusWitness) {
  GaloisWitness gw = so2_witness_galois(4);
  EXPECT_GE(gw.rho_a.lower, Rational(65536));
  auto spec = GeneratorSpec<Rational>::radius_ball(Rational(2));
  EXPECT_EQ(width_lower_bound(gw.z, spec), 9);
}

TEST(WordEvaluate, Examples) {
  EXPECT_TRUE(word_evaluate(Word<RationalFunction>{3, GroupTag::SL, {}}).is_identity());
  Word<RationalFunction> w{2, GroupTag::SL, {M::torus(2, 0, 1, tq(1)), M::torus(2, 0, 1, tq(1))}};
  EXPECT_EQ(word_evaluate(w), M::torus(2, 0, 1, tq(2)));
}

TEST(Certificate, VerifyAndJson) {
  auto spec = ball();
  M target = M::elementary(2, 0, 1, tq(-5));
  WidthCertificate<RationalFunction> cert{target, width_lower_bound(target, spec),
                                          factor_E12(tq(-5), tq(1), spec)};
  EXPECT_TRUE(verify_certificate(cert, spec));
  std::string js = certificate_json(cert, spec);
  EXPECT_NE(js.find("\"verified\":true"), std::string::npos);
  EXPECT_NE(js.find("\"lower_bound\":5"), std::string::npos);

  WidthCertificate<RationalFunction> bad = cert;
  bad.upper_word->factors.pop_back();
  EXPECT_FALSE(verify_certificate(bad, spec));
  bad = cert;
  bad.lower_bound = 6;
  EXPECT_FALSE(verify_certificate(bad, spec));
}

TEST(SO2, Sqrt) {
  Q id = Q::rotation(QAlgebraic(1L), QAlgebraic(0L));
  EXPECT_TRUE(so2_sqrt(id).w.is_identity());

  Q i = Q::rotation(QAlgebraic(0L), QAlgebraic(1L));
  SO2Root<Rational> r = so2_sqrt(i);
  EXPECT_EQ(r.tower->depth(), 1u);
  QAlgebraic a = r.w.at(0, 0);
  EXPECT_EQ(a * a, QAlgebraic(Rational(1, 2)));
  EXPECT_EQ(r.w * r.w, i);

  Q minus = Q::rotation(QAlgebraic(-1L), QAlgebraic(0L));
  EXPECT_EQ(so2_sqrt(minus).w, i);
}

TEST(SO2, GenerateValuation) {
  ValuationWitness vw = so2_witness_valuation(2, 1);
  auto spec = GeneratorSpec<RationalFunction>::valuation_ball(vw.vmap, Rational(1), GroupTag::SO2);
  EXPECT_EQ(vw.vmap(vw.z.at(0, 0)), ValuationValue(-4));
  SO2Generation<RationalFunction> gen = so2_generate(vw.z, spec, 6, 1);
  EXPECT_TRUE(gen.k == 2 || gen.k == 3);
  EXPECT_EQ(gen.word.length(), std::size_t{1} << gen.k);
  EXPECT_EQ(word_evaluate(gen.word), vw.z);
  for (const auto& f : gen.word.factors) EXPECT_TRUE(is_in_S(f, gen.spec));
  EXPECT_THROW(so2_generate(vw.z, spec, 1, 1), Error);
}

TEST(SO2, GenerateSpecialCases) {
  auto spec = GeneratorSpec<Rational>::radius_ball(Rational(2));
  Q id = Q::rotation(QAlgebraic(1L), QAlgebraic(0L));
  auto gen = so2_generate(id, spec, 4);
  ASSERT_EQ(gen.word.length(), 1u);
  EXPECT_TRUE(gen.word.factors[0].is_identity());

  Q minus = Q::rotation(QAlgebraic(-1L), QAlgebraic(0L));
  gen = so2_generate(minus, spec, 4);
  EXPECT_EQ(word_evaluate(gen.word), minus);
}

TEST(SO2, WitnessValuation) {
  for (unsigned n : {0u, 3u}) {
    ValuationWitness vw = so2_witness_valuation(n);
    auto spec = GeneratorSpec<RationalFunction>::valuation_ball(vw.vmap, Rational(1), GroupTag::SO2);
    EXPECT_EQ(width_lower_bound(vw.z, spec), 1L << n);
  }
}

TEST(SO2, WitnessGalois) {
  GaloisWitness gw = so2_witness_galois(2);
  EXPECT_GE(gw.rho_a.lower, pow(Rational(199, 100), 4UL));
  auto spec = GeneratorSpec<Rational>::radius_ball(Rational(2));
  EXPECT_EQ(width_lower_bound(gw.z, spec), 3);
}

TEST(Growth, Formulas) {
  EXPECT_EQ(entry_growth_bound(1, Rational(2)), Rational(2));
  EXPECT_EQ(entry_growth_bound(3, Rational(2)), Rational(32));
  EXPECT_EQ(embedded_growth_bound(2, 3, Rational(1), Rational(2)), Rational(972));
  EXPECT_THROW(entry_growth_bound(0, Rational(2)), Error);
}

TEST(Growth, RandomWords) {
  GrowthReport v = growth_check_valuation(40, 16, 3);
  EXPECT_EQ(v.words, 40u);
  EXPECT_EQ(v.violations, 0u);
  GrowthReport r = growth_check_radius(40, 16, 3);
  EXPECT_EQ(r.violations, 0u);
}
