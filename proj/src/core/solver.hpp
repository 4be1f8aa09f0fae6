#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include "core/error.hpp"
#include "core/varcalc.hpp"

namespace fcv {

struct FixedStep {
  double step = 1.0;
};

struct BacktrackingLineSearch {
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
};

struct SolverConfig {
  std::size_t max_iterations = 2000;
  /// Stop once the max-norm of the discrete gradient is at or below this.
  double gradient_tolerance = 1e-12;
  std::variant<FixedStep, BacktrackingLineSearch> step_control =
      BacktrackingLineSearch{};
  /// Defaults to the linear interpolant of the boundary conditions.
  std::optional<GridFunction> initial_guess;

  /// Throws Error(Domain) for out-of-range settings.
  void validate() const;
};

struct SolveResult {
  GridFunction y;
  ELReport report;
  double objective = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  /// False when max_iterations was reached or the line search stalled.
  bool converged = false;
};

/// Thrown when the objective becomes non-finite; carries the last iterate
/// with a finite objective.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& message, GridFunction last_iterate,
                  std::size_t iteration)
      : Error(ErrorKind::Divergence, message),
        last_(std::move(last_iterate)),
        iteration_(iteration) {}

  const GridFunction& last_iterate() const noexcept { return last_; }
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  GridFunction last_;
  std::size_t iteration_;
};

/// Discrete objective F(y) = sum_i w_i L(x_i, y_i, (A y)_i) with trapezoid
/// weights w and the L1 matrix A, and its exact gradient
/// w * L_y + A^T (w * L_dy) over the interior nodes.
class DiscreteObjective {
 public:
  explicit DiscreteObjective(const VariationalProblem& p);

  double value(const GridFunction& y) const;
  /// Gradient with zeros at the two pinned endpoints.
  std::vector<double> gradient(const GridFunction& y) const;

  const VariationalProblem& problem() const noexcept { return p_; }

 private:
  VariationalProblem p_;
  std::vector<double> coef_;     // L1 coefficients
  std::vector<double> weights_;  // trapezoid weights
};

/// Direct method: gradient descent on the interior node values with the
/// fixed metric A^T W A + W (a discrete H^alpha inner product), so the
/// iteration count does not grow with the grid. Returns the minimizer and
/// its Caputo-form Euler-Lagrange report.
SolveResult solve_direct(const VariationalProblem& p, const SolverConfig& cfg = {});

}  // namespace fcv
