#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace chainbf {

/// Natural log of the Gamma function for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// log B(alpha) = sum_i log Gamma(alpha_i) - log Gamma(sum_i alpha_i).
/// Requires at least two entries, all strictly positive.
double log_multivariate_beta(std::span<const double> alpha);
double log_multivariate_beta(std::initializer_list<double> alpha);

/// log B(a, b) for the two-argument Beta function.
double log_beta(double a, double b);

/// log of the binomial coefficient C(n, k), 0 <= k <= n.
double log_choose(std::int64_t n, std::int64_t k);

/// Numerically stable log(exp(a) + exp(b)); either side may be -inf.
double log_add_exp(double a, double b);

}  // namespace chainbf
