#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/grid.hpp"

using namespace fcv;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Format;
}

}  // namespace

TEST(FractionalOrder, RejectsBadArguments) {
  EXPECT_EQ(kind_of([] { FractionalOrder(0.0, 0, 1); }), ErrorKind::Order);
  EXPECT_EQ(kind_of([] { FractionalOrder(-0.5, 0, 1); }), ErrorKind::Order);
  EXPECT_EQ(kind_of([] { FractionalOrder(0.5, 1, 1); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { FractionalOrder(0.5, 2, 1); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { FractionalOrder(1.0, 0, 1).require_derivative_order(); }),
            ErrorKind::Order);
  EXPECT_NO_THROW(FractionalOrder(2.0, 0, 1));
  EXPECT_NO_THROW(FractionalOrder(0.5, 0, 1).require_derivative_order());
}

TEST(GridFunction, NodesAndSampling) {
  const auto f = GridFunction::sample(1.0, 3.0, 4, [](double x) { return x * x; });
  EXPECT_EQ(f.intervals(), 4u);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_DOUBLE_EQ(f.step(), 0.5);
  EXPECT_DOUBLE_EQ(f.node(0), 1.0);
  EXPECT_DOUBLE_EQ(f.node(4), 3.0);
  EXPECT_DOUBLE_EQ(f[2], 4.0);
  EXPECT_DOUBLE_EQ(f.max_abs(), 9.0);
}

TEST(GridFunction, RejectsTooFewNodesAndNonFiniteValues) {
  EXPECT_EQ(kind_of([] { GridFunction(0, 1, {1.0, 2.0}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] {
              GridFunction(0, 1, {1.0, std::numeric_limits<double>::quiet_NaN(), 2.0});
            }),
            ErrorKind::Domain);
  EXPECT_EQ(kind_of([] {
              GridFunction(0, 1, {1.0, std::numeric_limits<double>::infinity(), 2.0});
            }),
            ErrorKind::Domain);
}

TEST(GridFunction, ReflectionIsAnInvolution) {
  const auto f = GridFunction::sample(0, 2, 10, [](double x) { return std::exp(x); });
  const auto r = f.reflected();
  EXPECT_DOUBLE_EQ(r[0], f[10]);
  EXPECT_DOUBLE_EQ(r[3], f[7]);
  EXPECT_EQ(r.reflected(), f);
}

TEST(GridFunction, CombinationsAndDifferences) {
  const auto f = GridFunction::constant(0, 1, 4, 2.0);
  const auto g = GridFunction::sample(0, 1, 4, [](double x) { return x; });
  const auto h = linear_combination(3.0, f, -2.0, g);
  EXPECT_DOUBLE_EQ(h[4], 4.0);
  EXPECT_DOUBLE_EQ(max_abs_difference(f, g, 0, 4), 2.0);
  EXPECT_DOUBLE_EQ(max_abs_difference(f, g, 4, 4), 1.0);
  const auto other = GridFunction::constant(0, 2, 4, 2.0);
  EXPECT_FALSE(f.same_grid(other));
  EXPECT_EQ(kind_of([&] { linear_combination(1, f, 1, other); }), ErrorKind::Domain);
}

TEST(GridFunction, TrapezoidIsExactForLinear) {
  const auto g = GridFunction::sample(0, 2, 7, [](double x) { return 3 * x + 1; });
  EXPECT_NEAR(trapezoid(g), 8.0, 1e-14);
}

TEST(GridFunction, IntervalMismatchIsDomainError) {
  const auto f = GridFunction::constant(0, 1, 4, 1.0);
  EXPECT_EQ(kind_of([&] { require_matching_interval(f, FractionalOrder(0.5, 0, 2)); }),
            ErrorKind::Domain);
  EXPECT_NO_THROW(require_matching_interval(f, FractionalOrder(0.5, 0, 1)));
}
