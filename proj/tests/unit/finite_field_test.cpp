#include <gtest/gtest.h>

#include <set>

#include "widthlab/errors.hpp"
#include "widthlab/finite_field.hpp"

using namespace widthlab;

TEST(FiniteField, PrimeFieldUsesModulusX) {
  auto f = FiniteField::make(2, 1, 1);
  EXPECT_EQ(f.modulus(), (FpPoly{0, 1}));
  EXPECT_EQ(f.order(), 2u);
  EXPECT_EQ(f.mul(1, 1), 1u);
}

TEST(FiniteField, OnlyIrreducibleQuadraticOverF2) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(FiniteField::make(2, 2, seed).modulus(), (FpPoly{1, 1, 1}));
  }
}

TEST(FiniteField, QuadraticOverF3HasNoRoots) {
  auto f = FiniteField::make(3, 2, 42);
  const auto& m = f.modulus();
  for (std::uint64_t x = 0; x < 3; ++x) {
    EXPECT_NE((m[0] + m[1] * x + m[2] * x * x) % 3, 0u);
  }
  // exhaustive over all 9 elements: every nonzero element is invertible
  for (FFElem a = 1; a < 9; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
}

TEST(FiniteField, RejectsCompositeCharacteristic) {
  try {
    FiniteField::make(4, 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
}

TEST(FiniteField, IrreducibilityAgainstBruteForce) {
  // degree-4 polynomials over F_2: irreducible iff no factor of degree 1 or 2
  int count = 0;
  for (std::uint64_t code = 0; code < 16; ++code) {
    FpPoly f{code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1, 1};
    bool has_factor = false;
    for (std::uint64_t g = 2; g < 8 && !has_factor; ++g) {
      // trial division by every monic of degree 1 or 2
      FpPoly d;
      for (std::uint64_t b = g; b; b >>= 1) d.push_back(b & 1);
      if (d.size() < 2) continue;
      FpPoly r = f;
      while (r.size() >= d.size()) {
        if (r.back()) {
          std::size_t s = r.size() - d.size();
          for (std::size_t j = 0; j < d.size(); ++j) r[s + j] ^= d[j];
        }
        r.pop_back();
      }
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      has_factor = zero;
    }
    EXPECT_EQ(is_irreducible(2, f), !has_factor) << code;
    count += !has_factor;
  }
  EXPECT_EQ(count, 3);
}

TEST(FiniteField, FieldAxiomsOnSamples) {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 8}, {3, 5}, {5, 3}, {7, 2}, {2, 30}}) {
    auto f = FiniteField::make(p, n, 9);
    Prng rng(p * 100 + n);
    for (int i = 0; i < 200; ++i) {
      FFElem a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (b != 0) EXPECT_EQ(f.mul(f.div(a, b), b), a);
      // Frobenius is additive and multiplicative
      EXPECT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
      EXPECT_EQ(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
      EXPECT_EQ(f.pow(a, f.order()), a);
    }
  }
}

TEST(FiniteField, Rank) {
  auto f = FiniteField::make(3, 4, 1);
  EXPECT_EQ(fp_rank(f, {}), 0u);
  EXPECT_EQ(fp_rank(f, {1, 3, 9, 27}), 4u);
  EXPECT_EQ(fp_rank(f, {1, 2, f.add(3, 1)}), 2u);
}

TEST(FieldEmbedding, PrimeFieldIntoF4) {
  auto f2 = FiniteField::make(2, 1, 0);
  auto f4 = FiniteField::make(2, 2, 0);
  auto emb = finite_field_embed(f2, f4);
  EXPECT_EQ(emb.apply(1), 1u);
  EXPECT_EQ(emb.apply(0), 0u);
}

TEST(FieldEmbedding, F4IntoF16) {
  auto f4 = FiniteField::make(2, 2, 0);
  auto f16 = FiniteField::make(2, 4, 3);
  auto emb = finite_field_embed(f4, f16);
  // brute-force roots of X^2 + X + 1 in F_16
  std::set<FFElem> roots;
  for (FFElem x = 0; x < 16; ++x) {
    if (f16.add(f16.add(f16.mul(x, x), x), 1) == 0) roots.insert(x);
  }
  EXPECT_EQ(roots.size(), 2u);
  EXPECT_TRUE(roots.count(emb.image_of_generator()));
}

TEST(FieldEmbedding, DegreeMustDivide) {
  auto f4 = FiniteField::make(2, 2, 0);
  auto f8 = FiniteField::make(2, 3, 0);
  try {
    finite_field_embed(f4, f8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeNotDividing);
  }
}

TEST(FieldEmbedding, ImageIsFrobeniusFixedSubfield) {
  for (auto [p, e, n] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 2, 6}, {2, 3, 6}, {3, 2, 4}, {2, 4, 8}}) {
    auto src = FiniteField::make(p, e, 5);
    auto dst = FiniteField::make(p, n, 6);
    if (dst.order() > 256) continue;
    auto emb = finite_field_embed(src, dst, 7);
    std::set<FFElem> image;
    for (FFElem a = 0; a < src.order(); ++a) image.insert(emb.apply(a));
    EXPECT_EQ(image.size(), src.order());
    for (FFElem x = 0; x < dst.order(); ++x) EXPECT_EQ(dst.in_subfield(x, e), image.count(x) == 1) << x;
  }
}
