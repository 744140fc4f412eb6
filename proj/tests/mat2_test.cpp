#include "test_util.hpp"

using namespace kcomm;
using namespace kcomm::test;

TEST(MatOps, UnitMultiplication) {
  EXPECT_EQ(E(1, 2) * E(2, 1), E(1, 1));
  EXPECT_EQ(E(2, 1) * E(1, 2), E(2, 2));
  EXPECT_EQ(E(1, 2) * E(1, 2), Mat2<Rational>::zero());
}

TEST(MatOps, ConjugateTranspose) {
  EXPECT_EQ(conj_transpose(E(1, 1)), E(1, 1));
  const Mat2<Gaussian> m(Gaussian(0), Gaussian::i(), Gaussian(0), Gaussian(0));
  const Mat2<Gaussian> expected(Gaussian(0), Gaussian(0), -Gaussian::i(), Gaussian(0));
  EXPECT_EQ(conj_transpose(m), expected);
}

TEST(MatOps, PowerAndTraceDet) {
  const auto a = mq(1, 1, 0, 1);
  EXPECT_EQ(power(a, 5), mq(1, 5, 0, 1));
  EXPECT_EQ(power(a, 0), Mat2<Rational>::identity());
  const auto b = mq(3, -2, 7, 5);
  EXPECT_EQ(b.trace(), 8);
  EXPECT_EQ(b.det(), 3 * 5 - (-2) * 7);
}

TEST(Nilpotent, Examples) {
  EXPECT_TRUE(is_nilpotent(E(1, 2)));
  const auto n = mq(1, 1, -1, -1);
  EXPECT_EQ(oracle::square(n), Mat2<Rational>::zero());
  EXPECT_TRUE(is_nilpotent(n));
  EXPECT_FALSE(is_nilpotent(E(1, 1)));
  EXPECT_TRUE(is_nilpotent(Mat2<Rational>::zero()));
}

TEST(Idempotent, Examples) {
  EXPECT_TRUE(is_idempotent(E(1, 1)));
  const auto p = mq(1, 1, 0, 0);
  EXPECT_EQ(oracle::square(p), p);
  EXPECT_TRUE(is_idempotent(p));
  const Rational h = q("1/2");
  const Mat2<Rational> half(h, h, h, h);
  EXPECT_EQ(oracle::square(half), half);
  EXPECT_TRUE(is_idempotent(half));
  EXPECT_FALSE(is_idempotent(E(1, 2)));
}

TEST(RankOneFactor, UnitMatrix) {
  const auto r = rank_one_factor(E(1, 2));
  EXPECT_EQ(r.x, (Vec2<Rational>{1, 0}));
  EXPECT_EQ(r.f, (Vec2<Rational>{0, 1}));
}

TEST(RankOneFactor, CanonicalScaling) {
  const auto a = mq(2, 4, 1, 2);
  const auto r = rank_one_factor(a);
  EXPECT_EQ(to_matrix(r), a);
  // x runs along the first column (2, 1), normalized to a leading 1.
  EXPECT_EQ(r.x, (Vec2<Rational>{1, q("1/2")}));
  EXPECT_EQ(r.f, (Vec2<Rational>{2, 4}));
}

TEST(RankOneFactor, LeadingZeroColumn) {
  const auto a = mq(0, 0, 3, 6);
  const auto r = rank_one_factor(a);
  EXPECT_EQ(r.x, (Vec2<Rational>{0, 1}));
  EXPECT_EQ(to_matrix(r), a);
}

TEST(RankOneFactor, RejectsNonRankOne) {
  for (const auto& m : {Mat2<Rational>::identity(), Mat2<Rational>::zero(), mq(1, 2, 3, 4)}) {
    try {
      rank_one_factor(m);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::RankNotOne);
    }
  }
}

TEST(RankOneFactor, RoundTripOverGaussian) {
  Rng rng = make_rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto a = to_matrix(random_rank_one<Gaussian>(rng));
    EXPECT_EQ(to_matrix(rank_one_factor(a)), a);
  }
}

TEST(RankOneFactor, FloatScaleAwareDetection) {
  const Field<double> f(1e-9);
  // det is ~1e-7 in absolute terms but tiny relative to |A|^2 = 1e12.
  const Mat2<double> big(1e6, 2e6, 0.5, 1.0 + 1e-13);
  EXPECT_TRUE(is_rank_one(big, f));
  EXPECT_FALSE(is_rank_one(Mat2<double>(1, 0, 0, 1e-3), f));
}

TEST(Idempotent, PairingCharacterization) {
  Rng rng = make_rng(5);
  for (int t = 0; t < 500; ++t) {
    auto r = random_rank_one<Gaussian>(rng);
    // Every other trial rescale f so that <x, f> = 1 exactly.
    if (t % 2 == 0) {
      const Gaussian p = pairing(r.x, r.f);
      if (p == Gaussian(0)) continue;
      const Gaussian s = conj(Gaussian(1) / p);
      r.f = {r.f[0] * s, r.f[1] * s};
      ASSERT_EQ(pairing(r.x, r.f), Gaussian(1));
    }
    EXPECT_EQ(is_idempotent(to_matrix(r)), pairing(r.x, r.f) == Gaussian(1));
  }
}

TEST(SpectralSplit, JordanBlock) {
  const auto s = spectral_split(mq(1, 1, 0, 1));
  EXPECT_EQ(s.lambda, 1);
  EXPECT_EQ(s.nilpotent, E(1, 2));
  EXPECT_EQ(s.discriminant, 0);
}

TEST(SpectralSplit, NonTriangular) {
  const auto s = spectral_split(mq(2, 1, -1, 0));
  EXPECT_EQ(s.lambda, 1);
  EXPECT_EQ(s.nilpotent, mq(1, 1, -1, -1));
  EXPECT_EQ(oracle::square(s.nilpotent), Mat2<Rational>::zero());
}

TEST(SpectralSplit, RotationHasNegativeDiscriminant) {
  try {
    spectral_split(mq(0, 1, -1, 0));
    FAIL();
  } catch (const NotScalarPlusNilpotentError<Rational>& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotScalarPlusNilpotent);
    EXPECT_EQ(e.discriminant(), -4);
  }
}

TEST(SpectralSplit, ReassemblesWheneverItSucceeds) {
  Rng rng = make_rng(9);
  for (int t = 0; t < 500; ++t) {
    const Gaussian c = random_scalar<Gaussian>(rng);
    const auto s = t % 2 ? Mat2<Gaussian>::scalar(c) + random_nilpotent<Gaussian>(rng) : random_matrix<Gaussian>(rng);
    const auto v = scalar_plus_nilpotent_spectral(s);
    if (t % 2) EXPECT_TRUE(v.holds);
    if (!v.holds) continue;
    EXPECT_EQ(Mat2<Gaussian>::scalar(v.split->lambda) + v.split->nilpotent, s);
    EXPECT_EQ(v.split->nilpotent * v.split->nilpotent, Mat2<Gaussian>::zero());
  }
}

TEST(CayleyHamilton, HoldsForRandomMatrices) {
  Rng rng = make_rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto s = random_matrix<Gaussian>(rng);
    const auto p = s * s - s.trace() * s + s.det() * Mat2<Gaussian>::identity();
    EXPECT_EQ(p, Mat2<Gaussian>::zero());
  }
}
