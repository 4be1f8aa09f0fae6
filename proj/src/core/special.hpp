#pragma once

namespace fcv {

/// Euler gamma function via the Lanczos approximation (g = 7, 9 terms) with
/// reflection for arguments below 1/2. Relative error is below 1e-13 on
/// (0, 30]. Throws Error(Domain) at the poles (non-positive integers).
double gamma(double x);

/// True when x lies within 1e-9 of a non-positive integer.
bool is_gamma_pole(double x) noexcept;

/// 1/Gamma(x), which is entire: returns exactly 0 at the poles.
double reciprocal_gamma(double x);

}  // namespace fcv
