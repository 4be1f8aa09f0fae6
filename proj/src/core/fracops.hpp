#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/grid.hpp"

namespace fcv {

// Fractional integrals and derivatives of grid-sampled functions.
//
// Integrals use product-trapezoid weights: the kernel (x-u)^(alpha-1) is
// integrated exactly against the piecewise-linear interpolant of f, so the
// singularity is never sampled. Caputo derivatives use the L1 scheme: f' is
// replaced by per-interval differences and integrated exactly against
// (x-u)^(-alpha). Riemann-Liouville derivatives are assembled from the
// Caputo derivative plus the boundary-value term
//   D f = C_D f + f(endpoint) * dist^(-alpha) / Gamma(1 - alpha).
//
// Every operator is zero at its own endpoint (x = a for left operators,
// x = b for right ones), except RL derivatives of functions with a nonzero
// boundary value, whose endpoint node is flagged singular.

GridFunction left_rl_integral(const GridFunction& f, const FractionalOrder& ord);
GridFunction right_rl_integral(const GridFunction& f,
                               const FractionalOrder& ord);

/// Left integral evaluated only at x = b (O(N) instead of O(N^2)).
double left_rl_integral_at_end(const GridFunction& f,
                               const FractionalOrder& ord);
/// Right integral evaluated only at x = a.
double right_rl_integral_at_start(const GridFunction& f,
                                  const FractionalOrder& ord);

GridFunction left_caputo_derivative(const GridFunction& f,
                                    const FractionalOrder& ord);
GridFunction right_caputo_derivative(const GridFunction& f,
                                     const FractionalOrder& ord);

/// Coefficients c_k, k = 0..N-1, of the L1 scheme on a grid with the given
/// number of intervals:  C_D f(x_n) = sum_k c_k (f_{n-k} - f_{n-k-1}).
std::vector<double> l1_coefficients(const FractionalOrder& ord,
                                    std::size_t intervals);

struct RlDerivative {
  /// Finite everywhere; the singular node, if any, holds 0.
  GridFunction value;
  /// Endpoint node where the derivative is infinite (boundary value != 0).
  std::optional<std::size_t> singular_node;
  /// Sign of the infinity at the singular node.
  int singular_sign = 0;
};

RlDerivative left_rl_derivative(const GridFunction& f,
                                const FractionalOrder& ord);
RlDerivative right_rl_derivative(const GridFunction& f,
                                 const FractionalOrder& ord);

/// n-fold iterated integral from a (cumulative trapezoid applied n times).
GridFunction nfold_integral(const GridFunction& f, unsigned n);

/// Exact left RL integral of (u - a)^beta at x, beta > -1:
///   Gamma(beta + 1) / Gamma(alpha + beta + 1) * (x - a)^(alpha + beta).
double analytic_power_integral(double beta, const FractionalOrder& ord,
                               double x);

struct PowerDerivative {
  double value = 0.0;
  /// Gamma(beta + 1 - alpha) hit a pole: the derivative vanishes identically.
  bool annihilated = false;
};

/// Exact left RL derivative of (u - a)^beta at x in ]a, b]:
///   Gamma(beta + 1) / Gamma(beta + 1 - alpha) * (x - a)^(beta - alpha).
PowerDerivative analytic_power_rl_derivative(double beta,
                                             const FractionalOrder& ord,
                                             double x);

}  // namespace fcv
