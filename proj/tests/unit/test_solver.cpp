#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/solver.hpp"
#include "oracles.hpp"

using namespace fcv;

namespace {

const char* kManufactured = "(dy - 2*sqrt(x)/sqrt(pi))^2 + (y - x)^2";

VariationalProblem problem(const std::string& lagrangian, double alpha,
                           BoundaryConditions bc, std::size_t n) {
  return VariationalProblem(parse(lagrangian), FractionalOrder(alpha, 0, 1), bc, n);
}

double distance_to(const GridFunction& y, const oracle::Fn& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) e = std::max(e, std::abs(y[i] - f(y.node(i))));
  return e;
}

SolverConfig from_guess(const VariationalProblem& p, const oracle::Fn& f) {
  SolverConfig cfg;
  cfg.initial_guess = GridFunction::sample(0, 1, p.n_grid(), f);
  return cfg;
}

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

TEST(Solve, ManufacturedProblemFromSquareGuess) {
  const auto p = problem(kManufactured, 0.5, {0, 1}, 256);
  const auto start = std::chrono::steady_clock::now();
  const auto r = solve_direct(p, from_guess(p, [](double x) { return x * x; }));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(r.converged);
  EXPECT_LE(distance_to(r.y, [](double x) { return x; }), 5e-3);
  EXPECT_LE(r.objective, 1e-5);
  EXPECT_LE(seconds, 10.0);
  EXPECT_LE(r.gradient_norm, 1e-12);
  EXPECT_EQ(r.report.form, ELForm::Caputo);
  EXPECT_LE(r.report.residual_norm, 1e-8);
  EXPECT_NEAR(r.objective, eval_functional(p, r.y), 1e-15);
}

TEST(Solve, ClassicalLimitRecoversStraightLine) {
  const auto p = problem("dy^2", 0.999, {0, 1}, 256);
  const auto r = solve_direct(p, from_guess(p, [](double x) { return x * x; }));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(distance_to(r.y, [](double x) { return x; }), 2e-2);
}

TEST(Solve, EqualBoundaryValuesGiveConstant) {
  const auto p = problem("dy^2", 0.5, {0.7, 0.7}, 128);
  const auto r = solve_direct(p);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.objective, 0.0);
  for (double v : r.y.values()) EXPECT_EQ(v, 0.7);
  const auto bumpy = solve_direct(p, from_guess(p, [](double x) { return 0.7 + x * (1 - x); }));
  EXPECT_TRUE(bumpy.converged);
  EXPECT_LE(distance_to(bumpy.y, [](double) { return 0.7; }), 1e-10);
  EXPECT_LE(bumpy.gradient_norm, 1e-12);
}

TEST(Solve, MinimumPrinciple) {
  struct Case {
    const char* lagrangian;
    double alpha;
    BoundaryConditions bc;
  };
  const std::vector<Case> cases = {
      {kManufactured, 0.5, {0, 1}},
      {"dy^2", 0.999, {0, 1}},
      {"dy^2", 0.75, {0, 0.8}},
      {"dy^2 + y^2", 0.3, {1, 0}},
      {"exp(-x)*dy^2/2 + y^4 - sin(3*x)*y", 0.6, {0, 0.5}},
  };
  const double pi = std::acos(-1.0);
  const std::vector<oracle::Fn> etas = {
      [](double x) { return 4 * x * (1 - x); },
      [&](double x) { return std::sin(pi * x); },
      [&](double x) { return -std::sin(2 * pi * x); },
      [&](double x) { return std::sin(5 * pi * x); },
      [](double x) { return 6.75 * x * x * (1 - x); },
      [](double x) { return x < 0.5 ? 2 * x : 2 * (1 - x); },
  };
  for (const auto& c : cases) {
    const auto p = problem(c.lagrangian, c.alpha, c.bc, 128);
    const auto r = solve_direct(p);
    ASSERT_TRUE(r.converged) << c.lagrangian;
    const double j = eval_functional(p, r.y);
    for (const auto& ef : etas) {
      auto eta = GridFunction::sample(0, 1, 128, ef);
      const double scale = 1.0 / eta.max_abs();
      for (double sign : {1.0, -1.0}) {
        const auto perturbed = linear_combination(1, r.y, sign * 1e-3 * scale, eta);
        EXPECT_GE(eval_functional(p, perturbed), j - 1e-8) << c.lagrangian;
      }
    }
  }
}

TEST(Solve, Deterministic) {
  const auto p = problem("exp(-x)*dy^2/2 + y^4", 0.6, {0, 0.5}, 128);
  const auto a = solve_direct(p);
  const auto b = solve_direct(p);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(Solve, FixedStepVariant) {
  const auto p = problem(kManufactured, 0.5, {0, 1}, 64);
  SolverConfig cfg = from_guess(p, [](double x) { return x * x; });
  cfg.step_control = FixedStep{0.5};
  const auto r = solve_direct(p, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(distance_to(r.y, [](double x) { return x; }), 1e-10);
}

TEST(Solve, IterationLimitIsFlaggedNotThrown) {
  const auto p = problem("dy^2 + y^4 + cos(dy)", 0.5, {0, 1}, 64);
  SolverConfig cfg = from_guess(p, [](double x) { return x * x * x; });
  cfg.max_iterations = 1;
  const auto r = solve_direct(p, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_GT(r.gradient_norm, cfg.gradient_tolerance);
}

TEST(Solve, DegenerateLagrangianDoesNotThrow) {
  const auto p = problem("(dy^2 - 1)^2", 0.5, {0, 0}, 64);
  SolverConfig cfg;
  cfg.max_iterations = 50;
  EXPECT_NO_THROW(solve_direct(p, cfg));
}

TEST(Solve, DivergenceCarriesLastIterate) {
  const auto p = problem("-dy^2", 0.5, {0, 1}, 64);
  try {
    solve_direct(p);
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Divergence);
    EXPECT_GT(e.iteration(), 0u);
    const auto& y = e.last_iterate();
    EXPECT_TRUE(std::isfinite(eval_functional(p, y)));
    EXPECT_NO_THROW(p.require_admissible(y));
  }
}

TEST(Config, Validation) {
  auto bad = [](auto mutate) {
    SolverConfig cfg;
    mutate(cfg);
    return kind_of([&] { cfg.validate(); });
  };
  EXPECT_EQ(bad([](SolverConfig& c) { c.max_iterations = 0; }), ErrorKind::Domain);
  EXPECT_EQ(bad([](SolverConfig& c) { c.gradient_tolerance = 0; }), ErrorKind::Domain);
  EXPECT_EQ(bad([](SolverConfig& c) { c.step_control = FixedStep{0.0}; }), ErrorKind::Domain);
  EXPECT_EQ(bad([](SolverConfig& c) { c.step_control = BacktrackingLineSearch{1.0, 1e-4}; }),
            ErrorKind::Domain);
  EXPECT_EQ(bad([](SolverConfig& c) { c.step_control = BacktrackingLineSearch{0.5, 0.0}; }),
            ErrorKind::Domain);
  EXPECT_EQ(bad([](SolverConfig& c) { c.step_control = BacktrackingLineSearch{0.5, 1.0}; }),
            ErrorKind::Domain);
  EXPECT_NO_THROW(SolverConfig{}.validate());
}

TEST(Config, InitialGuessMustBeAdmissible) {
  const auto p = problem("dy^2", 0.5, {0, 1}, 64);
  EXPECT_EQ(kind_of([&] { solve_direct(p, from_guess(p, [](double x) { return x * x + 0.1; })); }),
            ErrorKind::Constraint);
  SolverConfig other;
  other.initial_guess = GridFunction::sample(0, 1, 32, [](double x) { return x; });
  EXPECT_EQ(kind_of([&] { solve_direct(p, other); }), ErrorKind::Domain);
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  const auto p = problem("exp(-x)*dy^2/2 + y^4 - sin(y*dy)", 0.35, {0.2, -0.4}, 40);
  const DiscreteObjective obj(p);
  std::vector<double> v(41);
  for (std::size_t i = 0; i <= 40; ++i) v[i] = 0.2 - 0.6 * i / 40.0 + 0.3 * std::sin(0.5 * i);
  v[0] = 0.2;
  v[40] = -0.4;
  const GridFunction y(0, 1, v);
  const auto g = obj.gradient(y);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 0.0);
  EXPECT_NEAR(obj.value(y), eval_functional(p, y), 1e-14);
  for (std::size_t i = 1; i < 40; ++i) {
    auto hi = v, lo = v;
    hi[i] += 1e-6;
    lo[i] -= 1e-6;
    const double fd = (obj.value(GridFunction(0, 1, hi)) - obj.value(GridFunction(0, 1, lo))) / 2e-6;
    EXPECT_NEAR(g[i], fd, 1e-7 * std::max(1.0, std::abs(fd))) << i;
  }
}

TEST(Objective, GradientIsTheGateauxDerivative) {
  const auto p = problem("dy^2 + y^2*x", 0.5, {0, 1}, 64);
  const DiscreteObjective obj(p);
  const auto y = GridFunction::sample(0, 1, 64, [](double x) { return x * x; });
  const auto eta = GridFunction::sample(0, 1, 64, [](double x) { return std::sin(3 * x) * x * (1 - x); });
  const auto g = obj.gradient(y);
  double dot = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * eta[i];
  EXPECT_NEAR(dot, gateaux_derivative(p, y, eta), 1e-12);
}
