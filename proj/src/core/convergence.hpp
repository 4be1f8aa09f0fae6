#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/varcalc.hpp"

namespace fcv {

/// Where the candidate extremal on each grid level comes from.
struct Candidate {
  enum class Kind { Solve, Expression, IntegralProfile };

  Kind kind = Kind::Solve;
  /// Function of x: the candidate itself (Expression) or the solver's
  /// initial guess on every level (Solve; linear interpolant when empty).
  std::optional<Expr> expr;
  /// Constant of the integral-form profile (IntegralProfile only).
  double K = 0.0;

  /// "solve", "solve:<initial guess in x>", "expr:<text in x>" or
  /// "el-profile:<K>". Throws Error(Domain) or ParseError.
  static Candidate parse(std::string_view text);
};

struct ConvergenceOptions {
  Ladder ladder = default_ladder();
  std::vector<ELForm> forms = {ELForm::Integral, ELForm::RL, ELForm::Caputo};
  double min_order = 0.5;
  double error_ceiling = 1e-2;
  /// Residuals at or below this count as exact.
  double roundoff_floor = 1e-10;
  /// Allowed relative deviation of the fitted K from the profile's K.
  double k_tolerance = 0.05;
  SolverConfig solver;
};

/// Samples the candidate on problem.with_grid(n).
GridFunction candidate_on_grid(const Candidate& c, const VariationalProblem& p);

/// One Report per requested residual form: errors are residual norms per
/// level and must decay (no increase beyond the floor), with the order and
/// finest-level ceiling of the options. The integral-form report carries the
/// fitted K per level; for the profile candidate the finest K must match.
/// Solved candidates of C2 Lagrangians add a transversality report, whose
/// errors |dL/d(dy)(b)| must not increase. Throws Error(Domain) for ladders
/// with fewer than three levels.
std::vector<Report> run_convergence(const VariationalProblem& p,
                                    const Candidate& candidate,
                                    const ConvergenceOptions& options = {});

}  // namespace fcv
