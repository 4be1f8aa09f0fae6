#include "core/convergence.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace fcv {

namespace {

Expr parse_function_of_x(std::string_view text) {
  Expr e = parse(text);
  if (depends_on(e, Variable::Y) || depends_on(e, Variable::Dy)) {
    throw Error(ErrorKind::Domain, "candidate expression may only use x");
  }
  return e;
}

GridFunction sample_expr(const Expr& e, const VariationalProblem& p) {
  const auto& ord = p.order();
  return GridFunction::sample(ord.a(), ord.b(), p.n_grid(), [&](double x) {
    return evaluate(e, Point{x, 0.0, 0.0});
  });
}

}  // namespace

Candidate Candidate::parse(std::string_view text) {
  Candidate c;
  if (text == "solve") return c;
  if (text.starts_with("solve:")) {
    c.expr = parse_function_of_x(text.substr(6));
    return c;
  }
  if (text.starts_with("expr:")) {
    c.kind = Kind::Expression;
    c.expr = parse_function_of_x(text.substr(5));
    return c;
  }
  if (text.starts_with("el-profile:")) {
    const auto num = text.substr(11);
    double k = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), k);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size() ||
        !std::isfinite(k)) {
      throw Error(ErrorKind::Domain,
                  "el-profile needs a finite constant, got '" + std::string(num) +
                      "'");
    }
    c.kind = Kind::IntegralProfile;
    c.K = k;
    return c;
  }
  throw Error(ErrorKind::Domain, "unknown candidate '" + std::string(text) +
                                     "' (expected solve, solve:<f(x)>, "
                                     "expr:<f(x)> or el-profile:<K>)");
}

GridFunction candidate_on_grid(const Candidate& c, const VariationalProblem& p) {
  const auto& ord = p.order();
  switch (c.kind) {
    case Candidate::Kind::Expression:
      return sample_expr(*c.expr, p);
    case Candidate::Kind::IntegralProfile: {
      const double end = el_integral_profile_end(ord, p.bc().ya, c.K);
      if (std::abs(end - p.bc().yb) > 1e-9) {
        throw Error(ErrorKind::Constraint,
                    "the K profile ends at y(b) = " + std::to_string(end) +
                        "; the problem must use that value for yb");
      }
      return el_integral_profile(ord, p.bc().ya, c.K, p.n_grid());
    }
    case Candidate::Kind::Solve:
      break;
  }
  throw Error(ErrorKind::Domain, "solved candidates have no closed form");
}

std::vector<Report> run_convergence(const VariationalProblem& p,
                                    const Candidate& candidate,
                                    const ConvergenceOptions& options) {
  validate_ladder(options.ladder, 3);
  if (options.forms.empty()) {
    throw Error(ErrorKind::Domain, "no residual form requested");
  }

  const bool solved = candidate.kind == Candidate::Kind::Solve;
  const bool with_transversality = solved && is_c2(p.lagrangian());

  std::vector<Report> reports;
  for (ELForm form : options.forms) {
    Report r;
    r.name = std::string("el_residual[") + to_string(form) + "]";
    r.grid_levels = options.ladder;
    r.thresholds = {options.min_order, options.error_ceiling,
                    options.roundoff_floor};
    reports.push_back(std::move(r));
  }
  Report trans;
  trans.name = "transversality";
  trans.grid_levels = options.ladder;
  // Only a decrease is required; the level of the quantity is the solver's.
  trans.thresholds = {0.0, options.error_ceiling, options.roundoff_floor};

  NamedSeries k_series{"K_hat", {}};
  NamedSeries iterations{"iterations", {}};
  NamedSeries objective{"objective", {}};
  for (std::size_t n : options.ladder) {
    const VariationalProblem level = p.with_grid(n);
    GridFunction y = [&] {
      if (!solved) return candidate_on_grid(candidate, level);
      SolverConfig cfg = options.solver;
      cfg.initial_guess.reset();
      if (candidate.expr) cfg.initial_guess = sample_expr(*candidate.expr, level);
      const SolveResult s = solve_direct(level, cfg);
      iterations.values.push_back(static_cast<double>(s.iterations));
      objective.values.push_back(s.objective);
      return s.y;
    }();
    for (std::size_t i = 0; i < options.forms.size(); ++i) {
      const ELReport el = el_residual(options.forms[i], level, y);
      reports[i].errors.push_back(el.residual_norm);
      if (options.forms[i] == ELForm::Integral) k_series.values.push_back(el.K_hat);
    }
    if (with_transversality) {
      trans.errors.push_back(std::abs(transversality_check(level, y)));
    }
  }

  for (std::size_t i = 0; i < reports.size(); ++i) {
    Report& r = reports[i];
    r.constraints_ok = non_increasing(r.errors, r.thresholds.roundoff_floor);
    if (options.forms[i] == ELForm::Integral) {
      if (candidate.kind == Candidate::Kind::IntegralProfile) {
        const double tol = options.k_tolerance *
                           (candidate.K != 0.0 ? std::abs(candidate.K) : 1.0);
        r.constraints_ok = r.constraints_ok &&
                           std::abs(k_series.values.back() - candidate.K) <= tol;
      }
      r.series.push_back(k_series);
    }
    if (solved) {
      r.series.push_back(iterations);
      r.series.push_back(objective);
    }
    r = finalize(std::move(r));
  }
  if (with_transversality) {
    trans.constraints_ok =
        non_increasing(trans.errors, trans.thresholds.roundoff_floor);
    reports.push_back(finalize(std::move(trans)));
  }
  return reports;
}

}  // namespace fcv
