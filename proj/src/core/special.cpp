#include "core/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace fcv {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // Gamma(x) for x >= 1/2.
  const double z = x - 1.0;
  double sum = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    sum += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
         std::exp(-t) * sum;
}

}  // namespace

bool is_gamma_pole(double x) noexcept {
  if (x > 0.5) return false;
  return std::abs(x - std::round(x)) <= 1e-9;
}

double gamma(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::Domain, "gamma: non-finite argument");
  }
  if (is_gamma_pole(x)) {
    throw Error(ErrorKind::Domain, "gamma: pole at non-positive integer");
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::numbers::pi /
           (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

double reciprocal_gamma(double x) {
  if (is_gamma_pole(x)) return 0.0;
  return 1.0 / gamma(x);
}

}  // namespace fcv
