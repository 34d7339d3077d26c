#include <gtest/gtest.h>

#include "hypercert/majorants.hpp"

using namespace hypercert;

TEST(CHatGeneral, SmallCases) {
  EXPECT_EQ(c_hat_general(build_weights(1, Rat(3))), Rat(1));
  EXPECT_EQ(c_hat_general(build_weights(2, Rat(3))), Rat(1, 4));
}

TEST(CHatGeneral, DegenerateRatioThrows) {
  // r = 2: the first factor has denominator r - 2 = 0.
  EXPECT_THROW(c_hat_general(build_weights(6, Rat(3))), Error);
}

TEST(CPairPower, SmallCases) {
  const MajorantPair two = c_pair_power(build_weights(2, Rat(3)));
  EXPECT_EQ(two.c_hat, Rat(1, 4));
  EXPECT_EQ(two.c_plain, Rat(1, 4));
  EXPECT_EQ(two.c_minus_ub, Rat(0));
  EXPECT_FALSE(two.valid);
  const MajorantPair one = c_pair_power(build_weights(1, Rat(3)));
  EXPECT_EQ(one.c_hat, Rat(1));
  EXPECT_EQ(one.c_plain, Rat(1));
}

TEST(CPairPower, DegenerateBaseThrows) {
  EXPECT_THROW(c_pair_power(build_weights(6, Rat(3))), Error);  // r = 2
  EXPECT_THROW(c_pair_power(build_weights(3, Rat(3))), Error);  // r = 1: r - 2 + 1/r = 0
  EXPECT_NO_THROW(c_hat_power(build_weights(3, Rat(3))));
  EXPECT_THROW(c_hat_power(build_weights(6, Rat(3))), Error);
}

TEST(CPairPower, DimNineByHand) {
  const WeightSequence w = build_weights(9, Rat(3));
  Rat hat(1), plain(1);
  for (int k = 1; k <= 8; ++k) {
    const Rat rk = rat_pow(Rat(3), k);
    hat *= rat_pow(rk - Rat(1), 9 - k) / ((rk - Rat(2)) * rat_pow(rk - Rat(2) - Rat(1, 3), 8 - k));
    plain *= rat_pow(rk - Rat(1), 9 - k) / ((rk - Rat(2)) * rat_pow(rk - Rat(2) + Rat(1, 3), 8 - k));
  }
  const MajorantPair m = c_pair_power(w);
  EXPECT_EQ(m.c_hat, hat);
  EXPECT_EQ(m.c_plain, plain);
  EXPECT_GT(m.c_hat, m.c_plain);
  EXPECT_GT(m.c_plain, Rat(0));
  EXPECT_TRUE(m.valid);
  EXPECT_EQ(m.c_minus_ub, (hat - plain) / Rat(2));
}

TEST(CrossForm, GeneralEqualsGapPower) {
  for (int c : {3, 4, 5})
    for (Variant v : {Variant::rational_base, Variant::ceil_base})
      for (int dim = 2; dim <= 30; ++dim) {
        const WeightSequence w = build_weights(dim, Rat(c), v);
        if (w.base == Rat(2)) continue;
        const Rat power = w.base == Rat(1) ? c_hat_power(w) : c_pair_power(w).c_hat;
        EXPECT_EQ(c_hat_general(w), power) << dim << " " << c << " " << to_string(v);
        if (w.base != Rat(1)) EXPECT_EQ(c_hat_power(w), power);
      }
}

TEST(ValidityGuard, ThresholdAtConstThree) {
  EXPECT_FALSE(validity_guard(build_weights(1, Rat(3))));
  EXPECT_FALSE(validity_guard(build_weights(3, Rat(3))));
  EXPECT_FALSE(validity_guard(build_weights(7, Rat(3))));
  EXPECT_TRUE(validity_guard(build_weights(8, Rat(3))));
  for (int dim = 1; dim <= 300; ++dim) EXPECT_EQ(validity_guard(build_weights(dim, Rat(3))), dim >= 8) << dim;
}

TEST(ValidityGuard, OtherConstants) {
  // c = 1: r = dim, r - 2 - 1/r > 0 from dim 3 on.
  EXPECT_FALSE(validity_guard(build_weights(2, Rat(1))));
  EXPECT_TRUE(validity_guard(build_weights(3, Rat(1))));
  // Ceil base at c = 3 reaches r = 3 at dim 7.
  EXPECT_FALSE(validity_guard(build_weights(6, Rat(3), Variant::ceil_base)));
  EXPECT_TRUE(validity_guard(build_weights(7, Rat(3), Variant::ceil_base)));
}

TEST(MajorantInvariants, UnderGuard) {
  for (int dim = 8; dim <= 40; ++dim) {
    const MajorantPair m = c_pair_power(build_weights(dim, Rat(3)));
    ASSERT_TRUE(m.valid);
    EXPECT_GE(m.c_hat, m.c_plain);
    EXPECT_GT(m.c_plain, Rat(0));
    EXPECT_GT(m.c_hat, Rat(1));
    EXPECT_GT(m.c_minus_ub, Rat(0));
    EXPECT_EQ(m.c_minus_ub, (m.c_hat - m.c_plain) / Rat(2));
  }
}

// c_minus_ub drops below 17/2 only from dim 43 on; below that, paper-mode
// rho0 is nonpositive even with margin 1.
TEST(MajorantInvariants, CMinusCrossesSeventeenHalvesAtDim43) {
  for (int dim = 8; dim <= 42; ++dim)
    EXPECT_TRUE(c_pair_power(build_weights(dim, Rat(3))).c_minus_ub >= Rat(17, 2)) << dim;
  const FloatInterval limit = FloatInterval::from(Rat(17, 2), 128);
  for (int dim = 43; dim <= 300; ++dim) {
    const MajorantBounds b = majorant_enclosure(build_weights(dim, Rat(3)), 128);
    EXPECT_TRUE(b.c_minus_ub.certainly_lt(limit)) << dim;
  }
}

TEST(MajorantInvariants, ScaledCMinusDecreasesAndStaysBounded) {
  std::optional<FloatInterval> prev;
  for (int dim = 8; dim <= 300; dim += 4) {
    const MajorantBounds b = majorant_enclosure(build_weights(dim, Rat(3)), 128);
    const FloatInterval scaled = FloatInterval::from(Rat(dim), 128) * b.c_minus_ub;
    if (prev) EXPECT_TRUE(scaled.certainly_lt(*prev)) << dim;
    if (dim >= 40) EXPECT_TRUE(scaled.certainly_lt(FloatInterval::from(Rat(400), 128))) << dim;
    prev = scaled;
  }
}

TEST(MajorantEnclosure, ContainsExactValues) {
  for (Variant v : {Variant::rational_base, Variant::ceil_base})
    for (int dim : {8, 13, 30}) {
      const WeightSequence w = build_weights(dim, Rat(3), v);
      if (!validity_guard(w)) continue;
      const MajorantPair m = c_pair_power(w);
      const MajorantBounds b = majorant_enclosure(w, 128);
      EXPECT_TRUE(b.c_hat.rat().contains(m.c_hat));
      EXPECT_TRUE(b.c_plain.rat().contains(m.c_plain));
      EXPECT_TRUE(b.c_minus_ub.rat().contains(m.c_minus_ub));
      EXPECT_TRUE(majorant_ratio_enclosure(w, 128).rat().contains(m.c_hat / m.c_plain));
    }
}

TEST(MajorantEnclosure, RefusesUnguardedWeights) {
  EXPECT_THROW(majorant_enclosure(build_weights(7, Rat(3)), 128), Error);
}
