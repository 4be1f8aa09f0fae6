#include "core/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/error.hpp"
#include "core/fracops.hpp"
#include "core/special.hpp"

namespace fcv {

namespace {

std::string label(const std::string& check, const std::string& detail,
                  double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return check + "[" + detail + ",alpha=" + buf + "]";
}

Report start_report(std::string name, const LawOptions& options) {
  validate_ladder(options.ladder, 2);
  Report r;
  r.name = std::move(name);
  r.grid_levels = options.ladder;
  r.thresholds.min_order = options.min_order;
  return r;
}

double max_over(const GridFunction& lhs, const GridFunction& rhs,
                std::size_t first, std::size_t last) {
  return max_abs_difference(lhs, rhs, first, last);
}

GridFunction product(const GridFunction& f, const GridFunction& g) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i] * g[i];
  return f.with_values(std::move(v));
}

// Second-order central differences, one-sided at the two ends.
GridFunction differentiate(const GridFunction& f) {
  const std::size_t n = f.intervals();
  const double h = f.step();
  std::vector<double> d(f.size());
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return f.with_values(std::move(d));
}

}  // namespace

std::vector<Fixture> default_fixtures() {
  return {
      {"1", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"sin(x)", [](double x) { return std::sin(x); }},
      {"exp(x)", [](double x) { return std::exp(x); }},
  };
}

Report check_inverse_identities(const Fixture& f, const FractionalOrder& ord,
                                const LawOptions& options) {
  ord.require_derivative_order();
  Report r = start_report(label("inverse_identities", f.name, ord.alpha()),
                          options);
  double scale = 0.0;
  for (std::size_t n : r.grid_levels) {
    const auto samples = GridFunction::sample(ord.a(), ord.b(), n, f.f);
    scale = samples.max_abs();
    const std::size_t skip = endpoint_exclusion(n, 2);
    const GridFunction jl = left_rl_integral(samples, ord);
    const GridFunction jr = right_rl_integral(samples, ord);
    const double e_left =
        std::max(max_over(left_rl_derivative(jl, ord).value, samples, skip, n),
                 max_over(left_caputo_derivative(jl, ord), samples, skip, n));
    const double e_right = std::max(
        max_over(right_rl_derivative(jr, ord).value, samples, 0, n - skip),
        max_over(right_caputo_derivative(jr, ord), samples, 0, n - skip));
    r.errors.push_back(std::max(e_left, e_right));
  }
  r.thresholds.error_ceiling = options.ceiling_factor * scale;
  return finalize(std::move(r));
}

Report check_fundamental_theorem(const Fixture& f, const FractionalOrder& ord,
                                 const LawOptions& options) {
  ord.require_derivative_order();
  Report r = start_report(label("fundamental_theorem", f.name, ord.alpha()),
                          options);
  NamedSeries left{"left_value", {}}, right{"right_value", {}};
  double scale = 0.0;
  for (std::size_t n : r.grid_levels) {
    const auto samples = GridFunction::sample(ord.a(), ord.b(), n, f.f);
    scale = samples.max_abs();
    const double lv =
        left_rl_integral_at_end(left_caputo_derivative(samples, ord), ord);
    const double rv =
        right_rl_integral_at_start(right_caputo_derivative(samples, ord), ord);
    left.values.push_back(lv);
    right.values.push_back(rv);
    const double diff = samples.back() - samples.front();
    r.errors.push_back(std::max(std::abs(lv - diff), std::abs(rv + diff)));
  }
  r.thresholds.error_ceiling = options.ceiling_factor * scale;
  r.series = {std::move(left), std::move(right)};
  return finalize(std::move(r));
}

Report check_integration_by_parts(const Fixture& f, const Fixture& g,
                                  const FractionalOrder& ord,
                                  const LawOptions& options) {
  ord.require_derivative_order();
  Report r = start_report(
      label("integration_by_parts", f.name + ";" + g.name, ord.alpha()),
      options);
  const FractionalOrder comp = ord.with_alpha(1.0 - ord.alpha());
  NamedSeries lhs_series{"left_formula_lhs", {}};
  NamedSeries rhs_series{"left_formula_rhs", {}};
  double scale = 0.0;
  for (std::size_t n : r.grid_levels) {
    const auto fs = GridFunction::sample(ord.a(), ord.b(), n, f.f);
    const auto gs = GridFunction::sample(ord.a(), ord.b(), n, g.f);
    scale = fs.max_abs();

    // int g C_D_a f = int f D_b g + [J_b^(1-alpha) g f]_a^b, with
    // D_b g = C_D_b g + g(b) (b-x)^(-alpha)/Gamma(1-alpha); the singular part
    // integrates to g(b) J_a^(1-alpha) f (b).
    const double lhs1 = trapezoid(product(gs, left_caputo_derivative(fs, ord)));
    const double rhs1 = trapezoid(product(fs, right_caputo_derivative(gs, ord))) +
                        gs.back() * left_rl_integral_at_end(fs, comp) -
                        right_rl_integral_at_start(gs, comp) * fs.front();

    // int g C_D_b f = int f D_a g + [(-1) J_a^(1-alpha) g f]_a^b.
    const double lhs2 =
        trapezoid(product(gs, right_caputo_derivative(fs, ord)));
    const double rhs2 = trapezoid(product(fs, left_caputo_derivative(gs, ord))) +
                        gs.front() * right_rl_integral_at_start(fs, comp) -
                        left_rl_integral_at_end(gs, comp) * fs.back();

    lhs_series.values.push_back(lhs1);
    rhs_series.values.push_back(rhs1);
    r.errors.push_back(std::max(std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)));
  }
  r.thresholds.error_ceiling = options.ceiling_factor * scale;
  r.series = {std::move(lhs_series), std::move(rhs_series)};
  return finalize(std::move(r));
}

Report check_rl_caputo_relation(const Fixture& f, const FractionalOrder& ord,
                                const LawOptions& options) {
  ord.require_derivative_order();
  Report r = start_report(label("rl_caputo_relation", f.name, ord.alpha()),
                          options);
  const FractionalOrder comp = ord.with_alpha(1.0 - ord.alpha());
  double scale = 0.0;
  for (std::size_t n : r.grid_levels) {
    const auto samples = GridFunction::sample(ord.a(), ord.b(), n, f.f);
    scale = samples.max_abs();
    const GridFunction direct =
        differentiate(left_rl_integral(samples, comp));
    const GridFunction production = left_rl_derivative(samples, ord).value;
    r.errors.push_back(
        max_over(direct, production, endpoint_exclusion(n, 3), n));
  }
  r.thresholds.error_ceiling = options.ceiling_factor * scale;
  return finalize(std::move(r));
}

Report check_holder_limit(double c, double beta, const FractionalOrder& ord,
                          const LawOptions& options, double tol) {
  ord.require_derivative_order();
  if (!(c > 0.0)) {
    throw Error(ErrorKind::Hypothesis, "Hoelder bound needs c > 0");
  }
  if (!(beta > -ord.alpha())) {
    throw Error(ErrorKind::Hypothesis,
                "decay of the fractional integral needs beta > -alpha");
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "c=%g,beta=%g", c, beta);
  Report r = start_report(label("holder_limit", detail, ord.alpha()), options);
  const double rate = ord.alpha() + beta;
  const double coef = c * gamma(beta + 1.0) / gamma(rate + 1.0);
  bool bound_ok = true;
  NamedSeries worst{"max_bound_ratio", {}};
  for (std::size_t n : r.grid_levels) {
    auto samples = GridFunction::sample(ord.a(), ord.b(), n, [&](double x) {
      const double d = x - ord.a();
      return d > 0.0 ? c * std::pow(d, beta) : (beta == 0.0 ? c : 0.0);
    });
    if (beta < 0.0) {
      // The sample at a is unbounded; replace it so that the interpolant
      // carries the exact mass of the first interval.
      std::vector<double> v(samples.values().begin(), samples.values().end());
      v[0] = c * std::pow(samples.step(), beta) * (1.0 - beta) / (1.0 + beta);
      samples = samples.with_values(std::move(v));
    }
    const GridFunction j = left_rl_integral(samples, ord);
    double ratio = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double bound = coef * std::pow(j.node(i) - ord.a(), rate);
      ratio = std::max(ratio, std::abs(j[i]) / bound);
    }
    if (ratio > 1.0 + tol) bound_ok = false;
    worst.values.push_back(ratio);
    r.errors.push_back(std::abs(j[1]));
  }
  const double finest_h = ord.span() / static_cast<double>(r.grid_levels.back());
  r.thresholds.min_order = rate - 0.05;
  r.thresholds.error_ceiling = (1.0 + tol) * coef * std::pow(finest_h, rate);
  r.thresholds.roundoff_floor = 0.0;
  r.series = {std::move(worst)};
  r.constraints_ok = bound_ok;
  r = finalize(std::move(r));
  // The decay rate must also not overshoot alpha + beta.
  if (r.estimated_order && *r.estimated_order > rate + 0.05) {
    r.constraints_ok = false;
    r.passed = false;
  }
  return r;
}

std::vector<Report> run_law_suite(const LawOptions& options) {
  std::vector<Report> reports;
  const auto fixtures = default_fixtures();
  const std::vector<Fixture> partners = {
      {"1", [](double) { return 1.0; }},
      {"1-x", [](double x) { return 1.0 - x; }},
  };
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FractionalOrder ord(alpha, 0.0, 1.0);
    for (const auto& f : fixtures) {
      reports.push_back(check_inverse_identities(f, ord, options));
      reports.push_back(check_fundamental_theorem(f, ord, options));
      reports.push_back(check_rl_caputo_relation(f, ord, options));
      for (const auto& g : partners) {
        reports.push_back(check_integration_by_parts(f, g, ord, options));
      }
    }
    for (double beta : {-alpha / 2.0, 0.0, 0.5, 1.0}) {
      reports.push_back(check_holder_limit(1.0, beta, ord, options));
    }
  }
  return reports;
}

}  // namespace fcv
