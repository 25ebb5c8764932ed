#pragma once

#include <vector>

namespace chainbf::detail {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// m-point Gauss rule for the Beta(a, b) probability measure on (0, 1), i.e. density
/// proportional to x^(a-1) (1-x)^(b-1). Exact for polynomials of degree <= 2m - 1; weights
/// are positive and sum to one. Built with Golub-Welsch on the Jacobi recurrence.
QuadratureRule beta_gauss_rule(double a, double b, int m);

}  // namespace chainbf::detail
