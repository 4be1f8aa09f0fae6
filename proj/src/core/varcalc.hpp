#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "core/expr.hpp"
#include "core/grid.hpp"

namespace fcv {

// Fractional variational problems
//
//   minimize J[y] = int_a^b L(x, y, C_D_a y) dx,  y(a) = ya, y(b) = yb,
//
// with dy in the Lagrangian bound to the left Caputo derivative of y.

struct BoundaryConditions {
  double ya = 0.0;
  double yb = 0.0;
};

class VariationalProblem {
 public:
  /// Throws Error(Order) unless 0 < alpha < 1, Error(Domain) for n_grid < 2
  /// or non-finite boundary values.
  VariationalProblem(Expr lagrangian, FractionalOrder ord, BoundaryConditions bc,
                     std::size_t n_grid);

  const Expr& lagrangian() const noexcept { return lagrangian_; }
  /// dL/dy and dL/d(dy).
  const Expr& partial_y() const noexcept { return partial_y_; }
  const Expr& partial_dy() const noexcept { return partial_dy_; }
  const FractionalOrder& order() const noexcept { return ord_; }
  const BoundaryConditions& bc() const noexcept { return bc_; }
  std::size_t n_grid() const noexcept { return n_grid_; }

  /// Same problem on a different grid.
  VariationalProblem with_grid(std::size_t n_grid) const;

  /// Straight line between the boundary values on the problem's grid.
  GridFunction linear_interpolant() const;

  /// Throws Error(Domain) when y lives on another interval, Error(Constraint)
  /// when y misses a boundary value by more than 1e-9.
  void require_admissible(const GridFunction& y) const;

 private:
  Expr lagrangian_;
  Expr partial_y_;
  Expr partial_dy_;
  FractionalOrder ord_;
  BoundaryConditions bc_;
  std::size_t n_grid_;
};

/// L, dL/dy and dL/d(dy) sampled along y, with dy = C_D_a y on the grid.
struct LagrangianSamples {
  GridFunction caputo;
  GridFunction value;
  GridFunction partial_y;
  GridFunction partial_dy;
};

LagrangianSamples sample_lagrangian(const VariationalProblem& p,
                                    const GridFunction& y);

/// Trapezoid quadrature of L along y.
double eval_functional(const VariationalProblem& p, const GridFunction& y);

/// The functional also equals Gamma(alpha) * J^alpha_{a,b}[(b - x)^(1-alpha) L].
struct FunctionalRepresentations {
  double trapezoid = 0.0;
  double weighted = 0.0;
  double gap() const noexcept;
};

FunctionalRepresentations functional_representations(
    const VariationalProblem& p, const GridFunction& y);

/// int [eta dL/dy + C_D_a eta dL/d(dy)] dx by the trapezoid rule. This is
/// the exact directional derivative of the discrete objective. Throws
/// Error(Constraint) unless eta vanishes at both ends within 1e-9.
double gateaux_derivative(const VariationalProblem& p, const GridFunction& y,
                          const GridFunction& eta);

enum class ELForm { Integral, RL, Caputo };

const char* to_string(ELForm form) noexcept;
/// "integral", "rl" or "caputo"; throws Error(Domain) otherwise.
ELForm parse_el_form(std::string_view name);

struct ELReport {
  ELForm form = ELForm::Caputo;
  /// Zero outside the evaluated range.
  GridFunction residual;
  /// Fitted coefficient of (b - x)^(alpha-1); integral form only.
  double K_hat = 0.0;
  double residual_norm = 0.0;
  /// Inclusive node range.
  std::size_t first = 0;
  std::size_t last = 0;
};

/// J_b(dL/dy) + dL/d(dy) - K (b - x)^(alpha-1), with K fitted by least squares
/// over nodes in [a, b - (b-a)/10]. Nodes next to a are excluded as well:
/// C_D_a y loses accuracy there when y is not smooth at a.
ELReport el_integral_residual(const VariationalProblem& p, const GridFunction& y);

/// dL/dy + D_b(dL/d(dy)) with the right RL derivative of the sampled
/// composite.
ELReport el_rl_residual(const VariationalProblem& p, const GridFunction& y);

/// dL/dy + C_D_b(dL/d(dy)). Meaningful for C2 Lagrangians only; callers can
/// consult is_c2(p.lagrangian()).
ELReport el_caputo_residual(const VariationalProblem& p, const GridFunction& y);

ELReport el_residual(ELForm form, const VariationalProblem& p,
                     const GridFunction& y);

/// dL/d(dy) at x = b.
double transversality_check(const VariationalProblem& p, const GridFunction& y);

struct WitnessReport {
  double K = 0.0;
  GridFunction g;
  double g_a = 0.0;
  double g_b = 0.0;
  double witness_value = 0.0;
  /// Log-log slope near a of the smallest non-increasing envelope of |f|:
  /// negative when f blows up at a, 0 when f is bounded there. Must exceed
  /// -alpha.
  double fitted_beta = 0.0;
};

/// K = Gamma(alpha+1)/(b-a)^alpha J_b f (evaluated as f(a) plus the same
/// expression applied to f - f(a)), g = J_a(f - K) and
/// witness_value = J_b (f - K)^2. Throws Error(Hypothesis) when the growth of
/// f over the first tenth of the grid is too singular for the integral to
/// vanish at a.
WitnessReport dubois_reymond_witness(const GridFunction& f,
                                     const FractionalOrder& ord);

/// The profile y = ya + (K/2) J_a[(b - x)^(alpha-1)], for which
/// 2 C_D_a y = K (b - x)^(alpha-1). Needs alpha > 1/2 for y(b) to be finite.
GridFunction el_integral_profile(const FractionalOrder& ord, double ya,
                                 double K, std::size_t intervals);

/// Closed-form end value of el_integral_profile:
///   ya + (K/2) (b-a)^(2 alpha - 1) / ((2 alpha - 1) Gamma(alpha)).
double el_integral_profile_end(const FractionalOrder& ord, double ya, double K);

}  // namespace fcv
