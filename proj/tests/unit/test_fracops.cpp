#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/fracops.hpp"
#include "core/report.hpp"
#include "oracles.hpp"

using namespace fcv;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

GridFunction sample(std::size_t n, const oracle::Fn& f, double a = 0.0,
                    double b = 1.0) {
  return GridFunction::sample(a, b, n, f);
}

double max_error_against(const GridFunction& g, const oracle::Fn& exact,
                         std::size_t first, std::size_t last) {
  double e = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    e = std::max(e, std::abs(g[i] - exact(g.node(i))));
  }
  return e;
}

double order_of(const std::vector<double>& errors) {
  return estimate_order(default_ladder(), errors, 0.0).value();
}

}  // namespace

TEST(ClosedForms, RlDerivativeOfOneAtOne) {
  const FractionalOrder ord(0.5, 0.0, 1.0);
  const auto d = left_rl_derivative(GridFunction::constant(0, 1, 512, 1.0), ord);
  EXPECT_NEAR(d.value.back(), 1.0 / kSqrtPi, 1e-3);
  ASSERT_TRUE(d.singular_node.has_value());
  EXPECT_EQ(*d.singular_node, 0u);
  EXPECT_EQ(d.singular_sign, 1);
  EXPECT_EQ(d.value[0], 0.0);
}

TEST(ClosedForms, RlIntegralOfOneAtOne) {
  const FractionalOrder ord(0.5, 0.0, 1.0);
  const auto j = left_rl_integral(GridFunction::constant(0, 1, 512, 1.0), ord);
  EXPECT_NEAR(j.back(), 2.0 / kSqrtPi, 1e-4);
  EXPECT_EQ(j[0], 0.0);
}

TEST(ClosedForms, CaputoAnnihilatesConstantsExactly) {
  for (int trial = 0; trial < 20; ++trial) {
    const double c = oracle::uniform(-1e3, 1e3);
    const double alpha = oracle::uniform(0.01, 0.99);
    const FractionalOrder ord(alpha, -1.0, 2.5);
    const auto f = GridFunction::constant(-1.0, 2.5, 97, c);
    const auto dl = left_caputo_derivative(f, ord);
    const auto dr = right_caputo_derivative(f, ord);
    for (double v : dl.values()) ASSERT_EQ(v, 0.0);
    for (double v : dr.values()) ASSERT_EQ(v, 0.0);
  }
}

TEST(ClosedForms, AnalyticPowerDerivative) {
  const FractionalOrder ord(0.5, 0.0, 1.0);
  auto p0 = analytic_power_rl_derivative(0.0, ord, 1.0);
  EXPECT_NEAR(p0.value, 1.0 / kSqrtPi, 1e-12);
  EXPECT_FALSE(p0.annihilated);
  auto p1 = analytic_power_rl_derivative(1.0, ord, 1.0);
  EXPECT_NEAR(p1.value, 2.0 / kSqrtPi, 1e-12);
  for (double x : {0.1, 0.5, 1.0}) {
    auto pole = analytic_power_rl_derivative(-0.5, ord, x);
    EXPECT_TRUE(pole.annihilated);
    EXPECT_EQ(pole.value, 0.0);
  }
  EXPECT_NEAR(analytic_power_integral(0.0, ord, 1.0), 2.0 / kSqrtPi, 1e-12);
}

TEST(ClosedForms, AnalyticPowerRejectsBadArguments) {
  const FractionalOrder ord(0.5, 0.0, 1.0);
  EXPECT_THROW(analytic_power_integral(-1.0, ord, 0.5), Error);
  EXPECT_THROW(analytic_power_integral(0.0, ord, 1.5), Error);
  EXPECT_THROW(analytic_power_rl_derivative(0.0, ord, 0.0), Error);
}

// The product-trapezoid error on x^2 is A h^2 (1 - c h^alpha): local rates
// rise towards 2 and the gap shrinks by about 2^-alpha per level.
TEST(Convergence, IntegralOfSquareApproachesOrderTwo) {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FractionalOrder ord(alpha, 0, 1);
    std::vector<double> errors;
    for (std::size_t n : default_ladder()) {
      const auto j = left_rl_integral(sample(n, [](double x) { return x * x; }), ord);
      errors.push_back(max_error_against(
          j, [&](double x) { return analytic_power_integral(2.0, ord, x); }, 0, n));
    }
    EXPECT_GE(order_of(errors), 1.95) << alpha;
    double previous_gap = 1.0;
    for (std::size_t k = 1; k < errors.size(); ++k) {
      const double gap = 2.0 - std::log2(errors[k - 1] / errors[k]);
      EXPECT_GT(gap, 0.0) << alpha;
      EXPECT_LT(gap, previous_gap) << alpha;
      if (k > 1) EXPECT_NEAR(gap / previous_gap, std::pow(2.0, -alpha), 0.03) << alpha;
      previous_gap = gap;
    }
  }
}

TEST(Convergence, CaputoOfSquareHasOrderTwoMinusAlpha) {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FractionalOrder ord(alpha, 0, 1);
    std::vector<double> errors;
    for (std::size_t n : default_ladder()) {
      const auto d = left_caputo_derivative(sample(n, [](double x) { return x * x; }), ord);
      errors.push_back(max_error_against(
          d, [&](double x) { return 2.0 * analytic_power_integral(1.0, ord.with_alpha(1 - alpha), x); },
          0, n));
    }
    // The L1 rates approach 2 - alpha from below.
    EXPECT_GE(order_of(errors), 2.0 - alpha - 0.1) << alpha;
    double previous = 0.0;
    for (std::size_t k = 1; k < errors.size(); ++k) {
      const double rate = std::log2(errors[k - 1] / errors[k]);
      EXPECT_GT(rate, previous) << alpha;
      EXPECT_GE(rate, 2.0 - alpha - 0.05) << alpha;
      EXPECT_LE(rate, 2.0 - alpha + 1e-3) << alpha;
      previous = rate;
    }
  }
}

TEST(Convergence, RightOperatorsOfSmoothFunctions) {
  const auto f = [](double x) { return std::exp(x); };
  for (double alpha : {0.3, 0.7}) {
    const FractionalOrder ord(alpha, 0, 1);
    std::vector<double> ej, ed;
    for (std::size_t n : default_ladder()) {
      const auto s = sample(n, f);
      ej.push_back(max_error_against(right_rl_integral(s, ord),
                                     [&](double x) { return oracle::right_integral(f, alpha, x, 1.0); },
                                     0, n));
      ed.push_back(max_error_against(right_caputo_derivative(s, ord),
                                     [&](double x) { return oracle::right_caputo(f, alpha, x, 1.0); },
                                     0, n));
    }
    // exp is still slightly pre-asymptotic on this ladder
    EXPECT_GE(order_of(ej), 1.95) << alpha;
    EXPECT_GE(order_of(ed), 2.0 - alpha - 0.1) << alpha;
  }
}

TEST(Accuracy, AgreesWithQuadratureAtRandomNodes) {
  const auto f = [](double x) { return std::sin(3 * x) + x; };
  const auto df = [](double x) { return 3 * std::cos(3 * x) + 1; };
  const double a = -0.5, b = 1.5;
  const std::size_t n = 1024;
  const auto s = sample(n, f, a, b);
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = oracle::uniform(0.1, 0.9);
    const FractionalOrder ord(alpha, a, b);
    const auto jl = left_rl_integral(s, ord);
    const auto jr = right_rl_integral(s, ord);
    const auto dl = left_caputo_derivative(s, ord);
    const auto dr = right_caputo_derivative(s, ord);
    const auto i = static_cast<std::size_t>(oracle::uniform(1, n - 1));
    const double x = s.node(i);
    EXPECT_NEAR(jl[i], oracle::left_integral(f, alpha, a, x), 1e-5);
    EXPECT_NEAR(jr[i], oracle::right_integral(f, alpha, x, b), 1e-5);
    EXPECT_NEAR(dl[i], oracle::left_caputo(df, alpha, a, x), 2e-3);
    EXPECT_NEAR(dr[i], oracle::right_caputo(df, alpha, x, b), 2e-3);
  }
}

TEST(Accuracy, ProductRectangleCrossCheck) {
  const auto f = [](double x) { return std::exp(-x) * (1 + x * x); };
  const FractionalOrder ord(0.4, 0, 2);
  const auto j = left_rl_integral(sample(800, f, 0, 2), ord);
  EXPECT_NEAR(j.back(), oracle::product_rectangle_left(f, 0.4, 0, 2, 1 << 18), 1e-6);
  const auto jr = right_rl_integral(sample(800, f, 0, 2), ord);
  EXPECT_NEAR(jr.front(), oracle::product_rectangle_right(f, 0.4, 0, 2, 1 << 18), 1e-6);
}

TEST(Accuracy, EndpointShortcutsMatchFullEvaluation) {
  const auto s = sample(333, [](double x) { return std::cos(x) + x; });
  const FractionalOrder ord(0.65, 0, 1);
  EXPECT_NEAR(left_rl_integral_at_end(s, ord), left_rl_integral(s, ord).back(), 1e-14);
  EXPECT_NEAR(right_rl_integral_at_start(s, ord), right_rl_integral(s, ord).front(), 1e-14);
}

TEST(Accuracy, L1CoefficientsReproduceLinearFunctions) {
  const FractionalOrder ord(0.35, 0, 1);
  const std::size_t n = 200;
  const auto c = l1_coefficients(ord, n);
  ASSERT_EQ(c.size(), n);
  const double h = 1.0 / n;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += c[k] * h;
  EXPECT_NEAR(sum, 1.0 / std::tgamma(2.0 - 0.35), 1e-13);
  const auto d = left_caputo_derivative(sample(n, [](double x) { return x; }), ord);
  EXPECT_NEAR(d.back(), sum, 1e-13);
}

TEST(Properties, Linearity) {
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = oracle::uniform(0.05, 0.95);
    const double c1 = oracle::uniform(-5, 5), c2 = oracle::uniform(-5, 5);
    const std::size_t n = 64 + static_cast<std::size_t>(oracle::uniform(0, 200));
    const FractionalOrder ord(alpha, 0, 2);
    std::vector<double> fv(n + 1), gv(n + 1);
    for (auto& v : fv) v = oracle::uniform(-1, 1);
    for (auto& v : gv) v = oracle::uniform(-1, 1);
    const GridFunction f(0, 2, fv), g(0, 2, gv);
    const auto fg = linear_combination(c1, f, c2, g);
    const double tol = 1e-10 * (std::abs(c1) * f.max_abs() + std::abs(c2) * g.max_abs());
    auto check = [&](auto op) {
      const GridFunction lhs = op(fg);
      const GridFunction rhs = linear_combination(c1, op(f), c2, op(g));
      EXPECT_LE(max_abs_difference(lhs, rhs, 0, n), tol);
    };
    check([&](const GridFunction& u) { return left_rl_integral(u, ord); });
    check([&](const GridFunction& u) { return right_rl_integral(u, ord); });
    check([&](const GridFunction& u) { return left_caputo_derivative(u, ord); });
    check([&](const GridFunction& u) { return right_caputo_derivative(u, ord); });
    check([&](const GridFunction& u) { return left_rl_derivative(u, ord).value; });
    check([&](const GridFunction& u) { return right_rl_derivative(u, ord).value; });
  }
}

TEST(Properties, ReflectionDuality) {
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = oracle::uniform(0.05, 0.95);
    const FractionalOrder ord(alpha, -1, 1);
    std::vector<double> v(151);
    for (auto& x : v) x = oracle::uniform(-2, 2);
    const GridFunction f(-1, 1, v);
    const auto fr = f.reflected();
    EXPECT_LE(max_abs_difference(right_rl_integral(f, ord),
                                 left_rl_integral(fr, ord).reflected(), 0, 150),
              1e-12);
    EXPECT_LE(max_abs_difference(right_caputo_derivative(f, ord),
                                 left_caputo_derivative(fr, ord).reflected(), 0, 150),
              1e-12);
    EXPECT_LE(max_abs_difference(right_rl_derivative(f, ord).value,
                                 left_rl_derivative(fr, ord).value.reflected(), 0, 150),
              1e-12);
  }
}

TEST(Properties, ClassicalLimit) {
  const std::size_t n = 1024;
  const FractionalOrder ord(0.999, 0, 1);
  const auto s = sample(n, [](double x) { return std::sin(2 * x) + x * x; });
  const auto d = left_caputo_derivative(s, ord);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double cd = (s[i + 1] - s[i - 1]) / (2 * s.step());
    worst = std::max(worst, std::abs(d[i] - cd));
    scale = std::max(scale, std::abs(cd));
  }
  EXPECT_LE(worst, 0.02 * scale);
}

TEST(Properties, SemigroupOfIntegrals) {
  const auto f = [](double x) { return std::exp(x) * std::cos(x); };
  for (auto [alpha, beta] : {std::pair{0.3, 0.4}, std::pair{0.5, 0.5}, std::pair{0.2, 0.7}}) {
    std::vector<double> errors, interior;
    for (std::size_t n : default_ladder()) {
      const auto s = sample(n, f);
      const FractionalOrder oa(alpha, 0, 1), ob(beta, 0, 1), oab(alpha + beta, 0, 1);
      const auto lhs = left_rl_integral(left_rl_integral(s, ob), oa);
      const auto rhs = left_rl_integral(s, oab);
      errors.push_back(max_abs_difference(lhs, rhs, 0, n));
      interior.push_back(max_abs_difference(lhs, rhs, endpoint_exclusion(n, 2), n));
    }
    // J^beta f ~ (x-a)^beta near a, which caps the order at the first nodes
    // at alpha + beta; away from a it is 1 + beta.
    EXPECT_GE(order_of(errors), alpha + beta - 0.05) << alpha << "+" << beta;
    EXPECT_GE(order_of(interior), 1.0) << alpha << "+" << beta;
    EXPECT_LE(interior.back(), 2e-4);
  }
}

TEST(Properties, Determinism) {
  const auto s = sample(500, [](double x) { return std::sin(17 * x); });
  const FractionalOrder ord(0.37, 0, 1);
  EXPECT_EQ(left_rl_integral(s, ord), left_rl_integral(s, ord));
  EXPECT_EQ(right_caputo_derivative(s, ord), right_caputo_derivative(s, ord));
}

TEST(RlDerivative, MatchesPowerFormula) {
  const FractionalOrder ord(0.5, 0, 1);
  for (double beta : {1.0, 2.0, 0.5}) {
    const auto s = sample(1024, [&](double x) { return std::pow(x, beta); });
    const auto d = left_rl_derivative(s, ord);
    EXPECT_FALSE(d.singular_node.has_value());
    for (std::size_t i : {256u, 512u, 1024u}) {
      EXPECT_NEAR(d.value[i], analytic_power_rl_derivative(beta, ord, s.node(i)).value,
                  5e-3)
          << beta;
    }
  }
}

TEST(RlDerivative, SingularSignFollowsBoundaryValue) {
  const FractionalOrder ord(0.5, 0, 1);
  const auto neg = left_rl_derivative(GridFunction::constant(0, 1, 16, -2.0), ord);
  EXPECT_EQ(neg.singular_sign, -1);
  const auto right = right_rl_derivative(GridFunction::constant(0, 1, 16, 3.0), ord);
  ASSERT_TRUE(right.singular_node.has_value());
  EXPECT_EQ(*right.singular_node, 16u);
  EXPECT_EQ(right.singular_sign, 1);
}

// D_b (b - x)^(alpha-1) = 0; the unbounded last sample is replaced by the
// value that gives the last interval its exact mass.
TEST(RlDerivative, AnnihilatesRightKernelPower) {
  const double alpha = 0.5;
  const FractionalOrder ord(alpha, 0, 1);
  std::vector<double> mid, bulk;
  for (std::size_t n : {128u, 256u, 512u, 1024u}) {
    const double h = 1.0 / n;
    auto s = sample(n, [&](double x) { return x < 1 ? std::pow(1 - x, alpha - 1) : 0.0; });
    std::vector<double> v(s.values().begin(), s.values().end());
    v[n] = 2.0 * std::pow(h, alpha) / alpha / h - v[n - 1];
    const auto d = right_rl_derivative(s.with_values(v), ord);
    mid.push_back(std::abs(d.value[n / 2]));
    bulk.push_back(max_abs_difference(d.value, GridFunction::constant(0, 1, n, 0.0), 0,
                                      n - n / 10));
  }
  for (std::size_t k = 1; k < mid.size(); ++k) {
    EXPECT_LT(mid[k], mid[k - 1]);
    EXPECT_LT(bulk[k], bulk[k - 1]);
  }
  EXPECT_LE(mid.back(), 2e-3);
}

TEST(Nfold, ReproducesIteratedIntegrals) {
  const auto s = sample(400, [](double x) { return x; });
  const auto once = nfold_integral(s, 1);
  const auto twice = nfold_integral(s, 2);
  EXPECT_NEAR(once.back(), 0.5, 1e-12);
  EXPECT_NEAR(twice.back(), 1.0 / 6.0, 1e-5);
  const auto j1 = left_rl_integral(s, FractionalOrder(1.0, 0, 1));
  EXPECT_LE(max_abs_difference(once, j1, 0, 400), 1e-12);
  const auto j2 = left_rl_integral(s, FractionalOrder(2.0, 0, 1));
  EXPECT_LE(max_abs_difference(twice, j2, 0, 400), 1e-5);
  EXPECT_THROW(nfold_integral(s, 0), Error);
}

TEST(Errors, DerivativesNeedOrderBelowOne) {
  const auto s = sample(10, [](double x) { return x; });
  try {
    left_caputo_derivative(s, FractionalOrder(1.5, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Order);
  }
  EXPECT_THROW(right_rl_derivative(s, FractionalOrder(1.0, 0, 1)), Error);
}

TEST(Errors, IntervalMismatch) {
  const auto s = sample(10, [](double x) { return x; });
  try {
    left_rl_integral(s, FractionalOrder(0.5, 0, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}
