#include "chainbf/special_fns.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chainbf/errors.hpp"

namespace chainbf {

namespace {

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

double lanczos_log_gamma(double x) {
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        sum += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Stirling series with Bernoulli corrections; truncation error < 1e-17 for x >= 15.
double stirling_log_gamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 -
               inv2 * (1.0 / 360.0 -
                       inv2 * (1.0 / 1260.0 -
                               inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0))))));
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be a finite positive number, got " + std::to_string(x));
    }
    if (x < 0.5) {
        // Gamma(x) = Gamma(x + 1) / x keeps the Lanczos sum away from its pole.
        return lanczos_log_gamma(x + 1.0) - std::log(x);
    }
    if (x < 15.0) {
        return lanczos_log_gamma(x);
    }
    return stirling_log_gamma(x);
}

double log_multivariate_beta(std::span<const double> alpha) {
    if (alpha.size() < 2) {
        throw DomainError("log_multivariate_beta: need at least two parameters");
    }
    double sum = 0.0;
    double total = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0)) {
            throw DomainError("log_multivariate_beta: parameters must be positive, got " + std::to_string(a));
        }
        sum += log_gamma(a);
        total += a;
    }
    return sum - log_gamma(total);
}

double log_multivariate_beta(std::initializer_list<double> alpha) {
    return log_multivariate_beta(std::span<const double>(alpha.begin(), alpha.size()));
}

double log_beta(double a, double b) {
    const std::array<double, 2> ab{a, b};
    return log_multivariate_beta(ab);
}

double log_choose(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("log_choose: need 0 <= k <= n");
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return log_gamma(nd + 1.0) - log_gamma(kd + 1.0) - log_gamma(nd - kd + 1.0);
}

double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) {
        return b;
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace chainbf
