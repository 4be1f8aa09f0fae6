#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/special.hpp"
#include "oracles.hpp"

using namespace fcv;

TEST(Gamma, MatchesTgammaOnPositiveRange) {
  double worst = 0.0;
  for (int i = 1; i <= 3000; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(fcv::gamma(x) / std::tgamma(x) - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Gamma, RandomPointsBelowThirty) {
  for (int i = 0; i < 500; ++i) {
    const double x = oracle::uniform(1e-6, 30.0);
    EXPECT_NEAR(fcv::gamma(x) / std::tgamma(x), 1.0, 1e-12) << x;
  }
}

TEST(Gamma, KnownValues) {
  EXPECT_NEAR(fcv::gamma(0.5), std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(fcv::gamma(1.5), 0.5 * std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(fcv::gamma(5.0), 24.0, 24.0 * 1e-13);
  EXPECT_NEAR(fcv::gamma(1.0), 1.0, 1e-14);
}

TEST(Gamma, NegativeNonIntegersUseReflection) {
  for (double x : {-0.5, -1.5, -2.25, -3.7, -0.001}) {
    EXPECT_NEAR(fcv::gamma(x) / std::tgamma(x), 1.0, 1e-11) << x;
  }
}

TEST(Gamma, PolesThrowDomain) {
  for (double x : {0.0, -1.0, -2.0, -7.0, -3.0 + 1e-11}) {
    try {
      fcv::gamma(x);
      FAIL() << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
  }
}

TEST(Gamma, PoleDetectionTolerance) {
  EXPECT_TRUE(is_gamma_pole(0.0));
  EXPECT_TRUE(is_gamma_pole(-4.0 + 5e-10));
  EXPECT_FALSE(is_gamma_pole(-4.0 + 1e-8));
  EXPECT_FALSE(is_gamma_pole(1.0));
  EXPECT_FALSE(is_gamma_pole(-0.5));
}

TEST(Gamma, ReciprocalIsZeroAtPoles) {
  EXPECT_EQ(reciprocal_gamma(0.0), 0.0);
  EXPECT_EQ(reciprocal_gamma(-2.0), 0.0);
  EXPECT_NEAR(reciprocal_gamma(0.5), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(reciprocal_gamma(-0.5), 1.0 / std::tgamma(-0.5), 1e-14);
}

TEST(Gamma, RecurrenceHolds) {
  for (int i = 0; i < 200; ++i) {
    const double x = oracle::uniform(0.05, 20.0);
    EXPECT_NEAR(fcv::gamma(x + 1.0) / (x * fcv::gamma(x)), 1.0, 1e-12);
  }
}
