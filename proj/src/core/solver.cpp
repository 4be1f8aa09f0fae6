#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "core/fracops.hpp"

namespace fcv {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations == 0) {
    throw Error(ErrorKind::Domain, "max_iterations must be positive");
  }
  if (!(gradient_tolerance > 0.0)) {
    throw Error(ErrorKind::Domain, "gradient_tolerance must be positive");
  }
  if (const auto* f = std::get_if<FixedStep>(&step_control)) {
    if (!(f->step > 0.0) || !std::isfinite(f->step)) {
      throw Error(ErrorKind::Domain, "fixed step must be positive");
    }
  } else {
    const auto& ls = std::get<BacktrackingLineSearch>(step_control);
    if (!(ls.shrink > 0.0 && ls.shrink < 1.0)) {
      throw Error(ErrorKind::Domain, "line-search shrink must lie in ]0,1[");
    }
    if (!(ls.sufficient_decrease > 0.0 && ls.sufficient_decrease < 1.0)) {
      throw Error(ErrorKind::Domain,
                  "line-search sufficient_decrease must lie in ]0,1[");
    }
  }
}

DiscreteObjective::DiscreteObjective(const VariationalProblem& p)
    : p_(p), coef_(l1_coefficients(p.order(), p.n_grid())) {
  const std::size_t n = p.n_grid();
  const double h = p.order().span() / static_cast<double>(n);
  weights_.assign(n + 1, h);
  weights_.front() = weights_.back() = 0.5 * h;
}

double DiscreteObjective::value(const GridFunction& y) const {
  const GridFunction dy = left_caputo_derivative(y, p_.order());
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum += weights_[i] * evaluate(p_.lagrangian(), Point{y.node(i), y[i], dy[i]});
  }
  return sum;
}

std::vector<double> DiscreteObjective::gradient(const GridFunction& y) const {
  const GridFunction dy = left_caputo_derivative(y, p_.order());
  const std::size_t n = y.intervals();
  std::vector<double> gy(n + 1), gdy(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const Point pt{y.node(i), y[i], dy[i]};
    gy[i] = weights_[i] * evaluate(p_.partial_y(), pt);
    gdy[i] = weights_[i] * evaluate(p_.partial_dy(), pt);
  }
  // (A y)_m = sum_k c_k (y_{m-k} - y_{m-k-1}), so column j of A holds
  // c_{m-j} - c_{m-j-1} in row m > j and c_0 in row j.
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double sum = coef_[0] * gdy[j];
    for (std::size_t m = j + 1; m <= n; ++m) {
      sum += (coef_[m - j] - coef_[m - j - 1]) * gdy[m];
    }
    g[j] = gy[j] + sum;
  }
  return g;
}

SolveResult solve_direct(const VariationalProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = p.n_grid();
  if (n < 3) {
    throw Error(ErrorKind::Domain, "solver needs at least one interior node");
  }
  GridFunction y = cfg.initial_guess ? *cfg.initial_guess : p.linear_interpolant();
  if (y.intervals() != n) {
    throw Error(ErrorKind::Domain, "initial guess has " +
                                       std::to_string(y.intervals()) +
                                       " intervals, problem has " +
                                       std::to_string(n));
  }
  p.require_admissible(y);

  const DiscreteObjective objective(p);
  const auto coef = l1_coefficients(p.order(), n);
  const double h = p.order().span() / static_cast<double>(n);

  // Metric on the interior nodes: B^T W B + W with B the interior columns
  // of A. Factored once.
  const Eigen::Index m = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), m);
  for (std::size_t row = 1; row <= n; ++row) {
    const double sw = std::sqrt(row == n ? 0.5 * h : h);
    for (std::size_t j = 1; j <= std::min(row, n - 1); ++j) {
      const double a = row == j ? coef[0] : coef[row - j] - coef[row - j - 1];
      B(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j - 1)) = sw * a;
    }
  }
  Eigen::MatrixXd metric = Eigen::MatrixXd::Zero(m, m);
  metric.selfadjointView<Eigen::Lower>().rankUpdate(B.transpose());
  metric.diagonal().array() += h;
  const Eigen::LLT<Eigen::MatrixXd> llt(metric.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::Domain, "solver metric is not positive definite");
  }

  auto finite_value = [&](const GridFunction& candidate, std::size_t it) {
    const double v = objective.value(candidate);
    if (!std::isfinite(v)) {
      throw DivergenceError("objective became non-finite at iteration " +
                                std::to_string(it),
                            y, it);
    }
    return v;
  };

  double gnorm = 0.0;
  bool converged = false;
  double f = finite_value(y, 0);
  std::size_t it = 0;
  for (;; ++it) {
    const auto g = objective.gradient(y);
    gnorm = max_abs(g);
    if (!std::isfinite(gnorm)) {
      throw DivergenceError("gradient became non-finite at iteration " +
                                std::to_string(it),
                            y, it);
    }
    if (gnorm <= cfg.gradient_tolerance) {
      converged = true;
      break;
    }
    if (it >= cfg.max_iterations) break;

    Eigen::VectorXd rhs(m);
    for (Eigen::Index j = 0; j < m; ++j) rhs(j) = g[static_cast<std::size_t>(j + 1)];
    const Eigen::VectorXd d = llt.solve(rhs);
    const double slope = rhs.dot(d);

    auto trial = [&](double t) {
      std::vector<double> v(y.values().begin(), y.values().end());
      for (Eigen::Index j = 0; j < m; ++j) {
        double& vj = v[static_cast<std::size_t>(j + 1)];
        vj -= t * d(j);
        if (!std::isfinite(vj)) {
          throw DivergenceError("iterate became non-finite at iteration " +
                                    std::to_string(it + 1),
                                y, it + 1);
        }
      }
      return y.with_values(std::move(v));
    };

    if (const auto* fixed = std::get_if<FixedStep>(&cfg.step_control)) {
      GridFunction next = trial(fixed->step);
      f = finite_value(next, it + 1);
      y = std::move(next);
      continue;
    }

    const auto& ls = std::get<BacktrackingLineSearch>(cfg.step_control);
    // First trial: the step minimizing the quadratic model along d, with the
    // curvature taken from a gradient difference (objective differences lose
    // all digits near the minimum). A plain unit step would be accepted on
    // well-preconditioned problems yet leave the modes at the top of the
    // spectrum oscillating.
    double t = 1.0;
    try {
      const auto g1 = objective.gradient(trial(1.0));
      double curvature = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        const auto k = static_cast<std::size_t>(j + 1);
        curvature += d(j) * (g[k] - g1[k]);
      }
      if (std::isfinite(curvature) && curvature > 0.0) {
        t = std::min(1.0, slope / curvature);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExpressionDomain) throw;
    }
    // Changes of F this small are rounding; such a step is only taken when
    // it reduces the gradient.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(f), std::numeric_limits<double>::min());
    bool accepted = false;
    while (t > 1e-16) {
      std::optional<GridFunction> next;
      double fn = 0.0;
      try {
        next = trial(t);
        fn = objective.value(*next);
      } catch (const Error& e) {
        // A trial point outside the Lagrangian's domain is rejected like an
        // insufficient decrease.
        if (e.kind() != ErrorKind::ExpressionDomain) throw;
        t *= ls.shrink;
        continue;
      }
      if (!std::isfinite(fn)) {
        throw DivergenceError("objective became non-finite at iteration " +
                                  std::to_string(it + 1),
                              y, it + 1);
      }
      bool ok = fn <= f - ls.sufficient_decrease * t * slope;
      if (!ok && std::abs(fn - f) <= noise) {
        ok = max_abs(objective.gradient(*next)) < gnorm;
      }
      if (ok) {
        y = std::move(*next);
        f = fn;
        accepted = true;
        break;
      }
      t *= ls.shrink;
    }
    if (!accepted) break;  // stalled: no descent at machine resolution
  }

  ELReport report = el_caputo_residual(p, y);
  return {std::move(y), std::move(report), f, gnorm, it, converged};
}

}  // namespace fcv
