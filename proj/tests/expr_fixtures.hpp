#pragma once

#include <string>
#include <vector>

// Grammar fixtures; all are defined on x in [0.1, 2], y and dy in [-2, 2].
inline const std::vector<std::string> kExprFixtures = {
    "dy^2",
    "dy^2 + y^2",
    "(dy - 2*sqrt(x)/sqrt(pi))^2 + (y - x)^2",
    "sin(x)*dy + exp(y)",
    "cos(x*y) - dy^3/3",
    "exp(-x)*dy^2/2 + y^4",
    "log(1 + y^2) - sqrt(2 + x)*dy",
    "x^2*y - dy/(1 + x)",
    "2^3^0.5 * y + e*dy",
    "-dy^2 + -(-y)",
    "(y - 1.5e-1)*(dy + 2.5E+0)",
    "abs(dy) + sign(y)*y",
    "sqrt(x)*(dy - y)^2 - 4*x*y*dy",
    "1/(3 + sin(dy))",
};
