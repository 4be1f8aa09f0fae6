#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace fcv {

FractionalOrder::FractionalOrder(double alpha, double a, double b)
    : alpha_(alpha), a_(a), b_(b) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw Error(ErrorKind::Order,
                "fractional order must be a positive finite number, got " +
                    std::to_string(alpha));
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(ErrorKind::Domain, "interval endpoints must satisfy a < b");
  }
}

void FractionalOrder::require_derivative_order() const {
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
    throw Error(ErrorKind::Order,
                "derivative order must lie in ]0,1[, got " +
                    std::to_string(alpha_));
  }
}

GridFunction::GridFunction(double a, double b, std::vector<double> values)
    : a_(a), b_(b), values_(std::move(values)) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(ErrorKind::Domain, "grid endpoints must satisfy a < b");
  }
  if (values_.size() < 3) {
    throw Error(ErrorKind::Domain, "grid needs at least 2 intervals");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::Domain,
                  "non-finite grid value at node " + std::to_string(i));
    }
  }
}

GridFunction GridFunction::sample(double a, double b, std::size_t intervals,
                                  const std::function<double(double)>& f) {
  std::vector<double> values(intervals + 1);
  const double n = static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) {
    values[i] = f(a + (b - a) * (static_cast<double>(i) / n));
  }
  return GridFunction(a, b, std::move(values));
}

GridFunction GridFunction::constant(double a, double b, std::size_t intervals,
                                    double value) {
  return GridFunction(a, b, std::vector<double>(intervals + 1, value));
}

double GridFunction::node(std::size_t i) const noexcept {
  if (i == intervals()) return b_;
  return a_ + (b_ - a_) * (static_cast<double>(i) /
                           static_cast<double>(intervals()));
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  if (values.size() != values_.size()) {
    throw Error(ErrorKind::Domain, "value count does not match the grid");
  }
  return GridFunction(a_, b_, std::move(values));
}

GridFunction GridFunction::reflected() const {
  std::vector<double> values(values_.rbegin(), values_.rend());
  return GridFunction(a_, b_, std::move(values));
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return a_ == other.a_ && b_ == other.b_ && size() == other.size();
}

void require_matching_interval(const GridFunction& f,
                               const FractionalOrder& ord) {
  const double tol = 1e-12 * ord.span();
  if (std::abs(f.a() - ord.a()) > tol || std::abs(f.b() - ord.b()) > tol) {
    throw Error(ErrorKind::Domain,
                "grid interval does not match the operator interval");
  }
}

GridFunction linear_combination(double c1, const GridFunction& f, double c2,
                                const GridFunction& g) {
  if (!f.same_grid(g)) {
    throw Error(ErrorKind::Domain, "linear combination of different grids");
  }
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = c1 * f[i] + c2 * g[i];
  return f.with_values(std::move(values));
}

double max_abs_difference(const GridFunction& f, const GridFunction& g,
                          std::size_t first, std::size_t last) {
  if (!f.same_grid(g)) {
    throw Error(ErrorKind::Domain, "comparison of different grids");
  }
  double m = 0.0;
  for (std::size_t i = first; i <= last && i < f.size(); ++i) {
    m = std::max(m, std::abs(f[i] - g[i]));
  }
  return m;
}

double trapezoid(const GridFunction& f) {
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * f.step();
}

}  // namespace fcv
