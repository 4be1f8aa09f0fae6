#include "core/fracops.hpp"

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/special.hpp"

namespace fcv {

namespace {

// Product-trapezoid weights for a kernel of order alpha. For a node whose
// integration range spans m intervals, the weight of the sample at distance
// k (in intervals) is 1 for k = 0, interior[k] for 0 < k < m and far[m] for
// k = m. The common factor is h^alpha / Gamma(alpha + 2).
struct IntegralWeights {
  double scale = 0.0;
  std::vector<double> interior;  // second differences of k^(alpha+1)
  std::vector<double> far;       // (m-1)^(alpha+1) - (m-1-alpha) m^alpha
};

IntegralWeights integral_weights(double alpha, std::size_t intervals,
                                 double h) {
  const double c = alpha + 1.0;
  IntegralWeights w;
  w.scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  w.interior.assign(intervals + 1, 0.0);
  w.far.assign(intervals + 1, 0.0);
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double kd = static_cast<double>(k);
    if (k == 1) {
      w.interior[k] = std::pow(2.0, c) - 2.0;
    } else {
      // k^c [(1 + 1/k)^c - 2 + (1 - 1/k)^c] without cancellation in the
      // leading terms.
      w.interior[k] = std::pow(kd, c) * (std::expm1(c * std::log1p(1.0 / kd)) +
                                         std::expm1(c * std::log1p(-1.0 / kd)));
    }
    const double m1 = kd - 1.0;
    w.far[k] = std::pow(m1, c) - (m1 - alpha) * std::pow(kd, alpha);
  }
  return w;
}

double integral_at(const IntegralWeights& w, std::span<const double> f,
                   std::size_t near, bool towards_start, std::size_t m) {
  if (m == 0) return 0.0;
  auto at = [&](std::size_t k) {
    return towards_start ? f[near - k] : f[near + k];
  };
  double sum = at(0);
  for (std::size_t k = 1; k < m; ++k) sum += w.interior[k] * at(k);
  sum += w.far[m] * at(m);
  return w.scale * sum;
}

// L1 weights b_k = (k+1)^(1-alpha) - k^(1-alpha).
std::vector<double> l1_weights(double alpha, std::size_t intervals) {
  const double c = 1.0 - alpha;
  std::vector<double> b(intervals, 0.0);
  if (intervals == 0) return b;
  b[0] = 1.0;
  for (std::size_t k = 1; k < intervals; ++k) {
    const double kd = static_cast<double>(k);
    b[k] = std::pow(kd, c) * std::expm1(c * std::log1p(1.0 / kd));
  }
  return b;
}

double l1_scale(double alpha, double h) {
  return std::pow(h, -alpha) / gamma(2.0 - alpha);
}

}  // namespace

std::vector<double> l1_coefficients(const FractionalOrder& ord,
                                    std::size_t intervals) {
  ord.require_derivative_order();
  auto b = l1_weights(ord.alpha(), intervals);
  const double scale =
      l1_scale(ord.alpha(), ord.span() / static_cast<double>(intervals));
  for (double& v : b) v *= scale;
  return b;
}

GridFunction left_rl_integral(const GridFunction& f,
                              const FractionalOrder& ord) {
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto w = integral_weights(ord.alpha(), n_int, f.step());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 1; n <= n_int; ++n) {
    out[n] = integral_at(w, f.values(), n, true, n);
  }
  return f.with_values(std::move(out));
}

GridFunction right_rl_integral(const GridFunction& f,
                               const FractionalOrder& ord) {
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto w = integral_weights(ord.alpha(), n_int, f.step());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 0; n < n_int; ++n) {
    out[n] = integral_at(w, f.values(), n, false, n_int - n);
  }
  return f.with_values(std::move(out));
}

double left_rl_integral_at_end(const GridFunction& f,
                               const FractionalOrder& ord) {
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto w = integral_weights(ord.alpha(), n_int, f.step());
  return integral_at(w, f.values(), n_int, true, n_int);
}

double right_rl_integral_at_start(const GridFunction& f,
                                  const FractionalOrder& ord) {
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto w = integral_weights(ord.alpha(), n_int, f.step());
  return integral_at(w, f.values(), 0, false, n_int);
}

GridFunction left_caputo_derivative(const GridFunction& f,
                                    const FractionalOrder& ord) {
  ord.require_derivative_order();
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto b = l1_weights(ord.alpha(), n_int);
  const double scale = l1_scale(ord.alpha(), f.step());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 1; n <= n_int; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += (f[n - k] - f[n - k - 1]) * b[k];
    out[n] = scale * sum;
  }
  return f.with_values(std::move(out));
}

GridFunction right_caputo_derivative(const GridFunction& f,
                                     const FractionalOrder& ord) {
  ord.require_derivative_order();
  require_matching_interval(f, ord);
  const std::size_t n_int = f.intervals();
  const auto b = l1_weights(ord.alpha(), n_int);
  const double scale = l1_scale(ord.alpha(), f.step());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 0; n < n_int; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k + n < n_int; ++k) {
      sum += (f[n + k] - f[n + k + 1]) * b[k];
    }
    out[n] = scale * sum;
  }
  return f.with_values(std::move(out));
}

RlDerivative left_rl_derivative(const GridFunction& f,
                                const FractionalOrder& ord) {
  const GridFunction caputo = left_caputo_derivative(f, ord);
  const double boundary = f.front();
  if (boundary == 0.0) return {caputo, std::nullopt, 0};
  const double coef = boundary / gamma(1.0 - ord.alpha());
  std::vector<double> out(caputo.values().begin(), caputo.values().end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] += coef * std::pow(f.node(i) - f.a(), -ord.alpha());
  }
  out[0] = 0.0;
  return {f.with_values(std::move(out)), std::size_t{0},
          boundary > 0.0 ? 1 : -1};
}

RlDerivative right_rl_derivative(const GridFunction& f,
                                 const FractionalOrder& ord) {
  const GridFunction caputo = right_caputo_derivative(f, ord);
  const double boundary = f.back();
  if (boundary == 0.0) return {caputo, std::nullopt, 0};
  const double coef = boundary / gamma(1.0 - ord.alpha());
  std::vector<double> out(caputo.values().begin(), caputo.values().end());
  const std::size_t last = out.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    out[i] += coef * std::pow(f.b() - f.node(i), -ord.alpha());
  }
  out[last] = 0.0;
  return {f.with_values(std::move(out)), last, boundary > 0.0 ? 1 : -1};
}

GridFunction nfold_integral(const GridFunction& f, unsigned n) {
  if (n == 0) {
    throw Error(ErrorKind::Domain, "n-fold integral needs n >= 1");
  }
  std::vector<double> current(f.values().begin(), f.values().end());
  std::vector<double> next(current.size());
  const double h = f.step();
  for (unsigned pass = 0; pass < n; ++pass) {
    next[0] = 0.0;
    for (std::size_t i = 1; i < current.size(); ++i) {
      next[i] = next[i - 1] + 0.5 * h * (current[i - 1] + current[i]);
    }
    current.swap(next);
  }
  return f.with_values(std::move(current));
}

double analytic_power_integral(double beta, const FractionalOrder& ord,
                               double x) {
  if (!(beta > -1.0)) {
    throw Error(ErrorKind::Domain,
                "power integral diverges for beta <= -1");
  }
  if (x < ord.a() || x > ord.b()) {
    throw Error(ErrorKind::Domain, "evaluation point outside [a, b]");
  }
  const double exponent = ord.alpha() + beta;
  const double coef = gamma(beta + 1.0) / gamma(exponent + 1.0);
  if (x == ord.a()) {
    if (exponent > 0.0) return 0.0;
    if (exponent == 0.0) return coef;
    throw Error(ErrorKind::Domain,
                "power integral is unbounded at x = a for alpha + beta < 0");
  }
  return coef * std::pow(x - ord.a(), exponent);
}

PowerDerivative analytic_power_rl_derivative(double beta,
                                             const FractionalOrder& ord,
                                             double x) {
  ord.require_derivative_order();
  if (!(beta > -1.0)) {
    throw Error(ErrorKind::Domain, "power function not integrable for beta <= -1");
  }
  if (!(x > ord.a()) || x > ord.b()) {
    throw Error(ErrorKind::Domain, "evaluation point outside ]a, b]");
  }
  const double shifted = beta + 1.0 - ord.alpha();
  if (is_gamma_pole(shifted)) return {0.0, true};
  return {gamma(beta + 1.0) / gamma(shifted) *
              std::pow(x - ord.a(), beta - ord.alpha()),
          false};
}

}  // namespace fcv
