#include "core/varcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "core/error.hpp"
#include "core/fracops.hpp"
#include "core/report.hpp"
#include "core/special.hpp"

namespace fcv {

namespace {

constexpr double kBoundaryTolerance = 1e-9;

GridFunction map_nodes(const GridFunction& like,
                       const std::function<double(std::size_t)>& f) {
  std::vector<double> v(like.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(i);
  return like.with_values(std::move(v));
}

ELReport finish(ELForm form, std::vector<double> residual, const GridFunction& y,
                std::size_t first, std::size_t last, double K_hat) {
  double norm = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (i < first || i > last) {
      residual[i] = 0.0;
    } else {
      norm = std::max(norm, std::abs(residual[i]));
    }
  }
  return {form, y.with_values(std::move(residual)), K_hat, norm, first, last};
}

// Interior nodes kept by the differential forms.
std::pair<std::size_t, std::size_t> interior_range(std::size_t intervals) {
  const std::size_t skip = endpoint_exclusion(intervals, 2);
  if (2 * skip >= intervals) {
    throw Error(ErrorKind::Domain, "grid too coarse for residual evaluation");
  }
  return {skip, intervals - skip};
}

}  // namespace

VariationalProblem::VariationalProblem(Expr lagrangian, FractionalOrder ord,
                                       BoundaryConditions bc,
                                       std::size_t n_grid)
    : lagrangian_(std::move(lagrangian)),
      partial_y_(differentiate(lagrangian_, Variable::Y)),
      partial_dy_(differentiate(lagrangian_, Variable::Dy)),
      ord_(ord),
      bc_(bc),
      n_grid_(n_grid) {
  ord_.require_derivative_order();
  if (n_grid_ < 2) {
    throw Error(ErrorKind::Domain, "n_grid must be >= 2");
  }
  if (!std::isfinite(bc_.ya) || !std::isfinite(bc_.yb)) {
    throw Error(ErrorKind::Domain, "boundary values must be finite");
  }
}

VariationalProblem VariationalProblem::with_grid(std::size_t n_grid) const {
  return VariationalProblem(lagrangian_, ord_, bc_, n_grid);
}

GridFunction VariationalProblem::linear_interpolant() const {
  const double a = ord_.a(), b = ord_.b();
  const double ya = bc_.ya, yb = bc_.yb;
  auto y = GridFunction::sample(a, b, n_grid_, [&](double x) {
    return ya + (yb - ya) * (x - a) / (b - a);
  });
  std::vector<double> v(y.values().begin(), y.values().end());
  v.front() = ya;
  v.back() = yb;
  return y.with_values(std::move(v));
}

void VariationalProblem::require_admissible(const GridFunction& y) const {
  require_matching_interval(y, ord_);
  if (std::abs(y.front() - bc_.ya) > kBoundaryTolerance ||
      std::abs(y.back() - bc_.yb) > kBoundaryTolerance) {
    throw Error(ErrorKind::Constraint,
                "candidate violates the boundary conditions y(a) = " +
                    std::to_string(bc_.ya) + ", y(b) = " +
                    std::to_string(bc_.yb));
  }
}

LagrangianSamples sample_lagrangian(const VariationalProblem& p,
                                    const GridFunction& y) {
  GridFunction dy = left_caputo_derivative(y, p.order());
  auto along = [&](const Expr& e) {
    return map_nodes(y, [&](std::size_t i) {
      return evaluate(e, Point{y.node(i), y[i], dy[i]});
    });
  };
  GridFunction value = along(p.lagrangian());
  GridFunction py = along(p.partial_y());
  GridFunction pdy = along(p.partial_dy());
  return {std::move(dy), std::move(value), std::move(py), std::move(pdy)};
}

double eval_functional(const VariationalProblem& p, const GridFunction& y) {
  p.require_admissible(y);
  const GridFunction dy = left_caputo_derivative(y, p.order());
  return trapezoid(map_nodes(y, [&](std::size_t i) {
    return evaluate(p.lagrangian(), Point{y.node(i), y[i], dy[i]});
  }));
}

double FunctionalRepresentations::gap() const noexcept {
  return std::abs(trapezoid - weighted);
}

FunctionalRepresentations functional_representations(
    const VariationalProblem& p, const GridFunction& y) {
  p.require_admissible(y);
  const auto s = sample_lagrangian(p, y);
  const double alpha = p.order().alpha();
  const double b = p.order().b();
  const GridFunction weighted = map_nodes(y, [&](std::size_t i) {
    return std::pow(b - y.node(i), 1.0 - alpha) * s.value[i];
  });
  return {trapezoid(s.value),
          gamma(alpha) * left_rl_integral_at_end(weighted, p.order())};
}

double gateaux_derivative(const VariationalProblem& p, const GridFunction& y,
                          const GridFunction& eta) {
  p.require_admissible(y);
  if (!eta.same_grid(y)) {
    throw Error(ErrorKind::Domain, "variation lives on a different grid");
  }
  if (std::abs(eta.front()) > kBoundaryTolerance ||
      std::abs(eta.back()) > kBoundaryTolerance) {
    throw Error(ErrorKind::Constraint,
                "variation must vanish at both endpoints");
  }
  const auto s = sample_lagrangian(p, y);
  const GridFunction deta = left_caputo_derivative(eta, p.order());
  return trapezoid(map_nodes(y, [&](std::size_t i) {
    return eta[i] * s.partial_y[i] + deta[i] * s.partial_dy[i];
  }));
}

const char* to_string(ELForm form) noexcept {
  switch (form) {
    case ELForm::Integral:
      return "integral";
    case ELForm::RL:
      return "rl";
    case ELForm::Caputo:
      return "caputo";
  }
  return "?";
}

ELForm parse_el_form(std::string_view name) {
  if (name == "integral") return ELForm::Integral;
  if (name == "rl") return ELForm::RL;
  if (name == "caputo") return ELForm::Caputo;
  throw Error(ErrorKind::Domain, "unknown residual form '" + std::string(name) +
                                     "' (expected integral, rl or caputo)");
}

ELReport el_integral_residual(const VariationalProblem& p,
                              const GridFunction& y) {
  p.require_admissible(y);
  const auto s = sample_lagrangian(p, y);
  const auto& ord = p.order();
  const std::size_t n = y.intervals();
  const GridFunction jy = right_rl_integral(s.partial_y, ord);

  const double cutoff = ord.b() - 0.1 * ord.span();
  std::size_t last = 0;
  while (last + 1 < n && y.node(last + 1) <= cutoff + 1e-12 * ord.span()) {
    ++last;
  }
  const std::size_t first = endpoint_exclusion(n, 2);
  if (first >= last) {
    throw Error(ErrorKind::Domain, "grid too coarse for residual evaluation");
  }

  std::vector<double> lhs(y.size()), regressor(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) lhs[i] = jy[i] + s.partial_dy[i];
  double num = 0.0, den = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    regressor[i] = std::pow(ord.b() - y.node(i), ord.alpha() - 1.0);
    num += lhs[i] * regressor[i];
    den += regressor[i] * regressor[i];
  }
  const double K_hat = num / den;
  for (std::size_t i = first; i <= last; ++i) lhs[i] -= K_hat * regressor[i];
  return finish(ELForm::Integral, std::move(lhs), y, first, last, K_hat);
}

ELReport el_rl_residual(const VariationalProblem& p, const GridFunction& y) {
  p.require_admissible(y);
  const auto s = sample_lagrangian(p, y);
  const auto outer = right_rl_derivative(s.partial_dy, p.order());
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    r[i] = s.partial_y[i] + outer.value[i];
  }
  const auto [first, last] = interior_range(y.intervals());
  return finish(ELForm::RL, std::move(r), y, first, last, 0.0);
}

ELReport el_caputo_residual(const VariationalProblem& p, const GridFunction& y) {
  p.require_admissible(y);
  const auto s = sample_lagrangian(p, y);
  const GridFunction outer = right_caputo_derivative(s.partial_dy, p.order());
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = s.partial_y[i] + outer[i];
  const auto [first, last] = interior_range(y.intervals());
  return finish(ELForm::Caputo, std::move(r), y, first, last, 0.0);
}

ELReport el_residual(ELForm form, const VariationalProblem& p,
                     const GridFunction& y) {
  switch (form) {
    case ELForm::Integral:
      return el_integral_residual(p, y);
    case ELForm::RL:
      return el_rl_residual(p, y);
    case ELForm::Caputo:
      break;
  }
  return el_caputo_residual(p, y);
}

double transversality_check(const VariationalProblem& p, const GridFunction& y) {
  p.require_admissible(y);
  const GridFunction dy = left_caputo_derivative(y, p.order());
  return evaluate(p.partial_dy(), Point{y.b(), y.back(), dy.back()});
}

WitnessReport dubois_reymond_witness(const GridFunction& f,
                                     const FractionalOrder& ord) {
  require_matching_interval(f, ord);
  const double alpha = ord.alpha();
  const std::size_t n = f.intervals();

  // Growth near a: suffix maxima of |f| over the first tenth of the nodes
  // give a non-increasing envelope whose log-log slope bounds the exponent.
  const std::size_t m = std::max<std::size_t>(2, n / 10);
  std::vector<double> envelope(m + 1, 0.0);
  double running = 0.0;
  for (std::size_t i = m; i >= 1; --i) {
    running = std::max(running, std::abs(f[i]));
    envelope[i] = running;
  }
  double beta = std::numeric_limits<double>::infinity();
  if (envelope[1] > 0.0) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, count = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      if (envelope[i] == 0.0) break;
      const double lx = std::log(f.node(i) - f.a());
      const double ly = std::log(envelope[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      count += 1.0;
    }
    const double denom = count * sxx - sx * sx;
    beta = count >= 2.0 && denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
  }
  if (!(beta > -alpha)) {
    throw Error(ErrorKind::Hypothesis,
                "f grows like (x-a)^" + std::to_string(beta) +
                    " near a; the fractional integral needs exponent > -alpha");
  }

  WitnessReport w{0.0, f, 0.0, 0.0, 0.0, beta};
  // Centered on f(a): J_b(f - f(a)) vanishes identically for constant f, so
  // K reproduces a constant exactly.
  std::vector<double> shifted(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) shifted[i] = f[i] - f.front();
  w.K = f.front() + gamma(alpha + 1.0) / std::pow(ord.span(), alpha) *
                        left_rl_integral_at_end(f.with_values(std::move(shifted)), ord);
  std::vector<double> centered(f.size()), squared(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    centered[i] = f[i] - w.K;
    squared[i] = centered[i] * centered[i];
  }
  w.g = left_rl_integral(f.with_values(std::move(centered)), ord);
  w.g_a = w.g.front();
  w.g_b = w.g.back();
  w.witness_value = left_rl_integral_at_end(f.with_values(std::move(squared)), ord);
  return w;
}

double el_integral_profile_end(const FractionalOrder& ord, double ya, double K) {
  const double alpha = ord.alpha();
  if (!(alpha > 0.5)) {
    throw Error(ErrorKind::Domain,
                "the integral-form profile is unbounded at b for alpha <= 1/2");
  }
  return ya + 0.5 * K * std::pow(ord.span(), 2.0 * alpha - 1.0) /
                  ((2.0 * alpha - 1.0) * gamma(alpha));
}

GridFunction el_integral_profile(const FractionalOrder& ord, double ya, double K,
                                 std::size_t intervals) {
  const double end = el_integral_profile_end(ord, ya, K);
  const double alpha = ord.alpha();
  const double a = ord.a(), b = ord.b();
  const double scale = 0.5 * K / gamma(alpha);
  boost::math::quadrature::tanh_sinh<double> quad;
  return GridFunction::sample(a, b, intervals, [&](double x) {
    if (x <= a) return ya;
    if (x >= b) return end;
    // (x-u)^(alpha-1) (b-u)^(alpha-1) on [a, x]; the complement argument
    // carries the distance to the nearer end without cancellation.
    auto kernel = [&](double u, double uc) {
      const double to_x = u > 0.5 * (a + x) ? uc : x - u;
      return std::pow(to_x, alpha - 1.0) * std::pow(b - x + to_x, alpha - 1.0);
    };
    return ya + scale * quad.integrate(kernel, a, x);
  });
}

}  // namespace fcv
