#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fcv {

/// Order alpha > 0 of a fractional operator together with its interval [a, b].
/// Derivative operators additionally require alpha < 1; they check that
/// themselves via require_derivative_order().
class FractionalOrder {
 public:
  FractionalOrder(double alpha, double a, double b);

  double alpha() const noexcept { return alpha_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double span() const noexcept { return b_ - a_; }

  /// Throws Error(Order) unless 0 < alpha < 1.
  void require_derivative_order() const;

  FractionalOrder with_alpha(double alpha) const {
    return FractionalOrder(alpha, a_, b_);
  }

 private:
  double alpha_;
  double a_;
  double b_;
};

/// Real function sampled at the N + 1 nodes x_i = a + i (b - a) / N of a
/// uniform grid, N >= 2. Values are always finite.
class GridFunction {
 public:
  GridFunction(double a, double b, std::vector<double> values);

  static GridFunction sample(double a, double b, std::size_t intervals,
                             const std::function<double(double)>& f);
  static GridFunction constant(double a, double b, std::size_t intervals,
                               double value);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t intervals() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept {
    return (b_ - a_) / static_cast<double>(intervals());
  }
  double node(std::size_t i) const noexcept;

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Same grid, new values (validated).
  GridFunction with_values(std::vector<double> values) const;
  /// x -> f(a + b - x).
  GridFunction reflected() const;
  double max_abs() const noexcept;
  bool same_grid(const GridFunction& other) const noexcept;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  double a_;
  double b_;
  std::vector<double> values_;
};

/// Throws Error(Domain) unless f lives on [ord.a(), ord.b()].
void require_matching_interval(const GridFunction& f,
                               const FractionalOrder& ord);

/// Component-wise c1 f + c2 g on a shared grid.
GridFunction linear_combination(double c1, const GridFunction& f, double c2,
                                const GridFunction& g);

/// Max |f_i - g_i| over nodes first..last (inclusive).
double max_abs_difference(const GridFunction& f, const GridFunction& g,
                          std::size_t first, std::size_t last);

/// Composite trapezoid rule over the whole grid.
double trapezoid(const GridFunction& f);

}  // namespace fcv
