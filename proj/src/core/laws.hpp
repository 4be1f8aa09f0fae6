#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/report.hpp"

namespace fcv {

/// Analytic test function, resampled on every grid level of a check.
struct Fixture {
  std::string name;
  std::function<double(double)> f;
};

/// 1, x, x^2, sin x, exp x.
std::vector<Fixture> default_fixtures();

struct LawOptions {
  Ladder ladder = default_ladder();
  double min_order = 1.0;
  /// Finest-grid error must not exceed ceiling_factor * max|f|.
  double ceiling_factor = 1e-2;
};

/// ||D J f - f|| and ||C_D J f - f||, left and right, away from the
/// operators' own endpoints.
Report check_inverse_identities(const Fixture& f, const FractionalOrder& ord,
                                const LawOptions& options = {});

/// J^alpha_{a,b} C_D_a f against f(b) - f(a), and the right-hand analogue
/// against f(a) - f(b).
Report check_fundamental_theorem(const Fixture& f, const FractionalOrder& ord,
                                 const LawOptions& options = {});

/// Both integration-by-parts formulas, each side discretized independently.
/// The negative-order boundary operators are fractional integrals of order
/// 1 - alpha; the left formula's boundary term carries the sign -1.
Report check_integration_by_parts(const Fixture& f, const Fixture& g,
                                  const FractionalOrder& ord,
                                  const LawOptions& options = {});

/// Direct RL derivative (central differences of J^(1-alpha) f) against the
/// Caputo-plus-boundary-term route used by left_rl_derivative.
Report check_rl_caputo_relation(const Fixture& f, const FractionalOrder& ord,
                                const LawOptions& options = {});

/// For f = c (x - a)^beta: the pointwise bound
///   |J f(x)| <= c Gamma(beta+1)/Gamma(alpha+beta+1) (x-a)^(alpha+beta) (1+tol)
/// at every node, and decay of J f at the first interior node with rate
/// alpha + beta. Errors are the first-node values. Throws Error(Hypothesis)
/// unless c > 0 and beta > -alpha.
Report check_holder_limit(double c, double beta, const FractionalOrder& ord,
                          const LawOptions& options = {}, double tol = 0.05);

/// Every check over the shipped fixtures for alpha in {0.25, 0.5, 0.75} on
/// [0, 1].
std::vector<Report> run_law_suite(const LawOptions& options = {});

}  // namespace fcv
