#include "chainbf/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chainbf/errors.hpp"

namespace chainbf {

double entropy(const Dist2x2& q) {
    double s = 0.0;
    for (double p : q.cells()) {
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double ScorePenalty::penalty_term() const {
    const double ln_n = std::log(n);
    return -leading * ln_n + (loglog != 0.0 ? loglog * std::log(ln_n) : 0.0);
}

ScorePenalty regular_penalty(double n, int d) {
    if (!(n >= 2.0)) {
        throw DomainError("regular_penalty: need n >= 2");
    }
    if (d < 1) {
        throw DomainError("regular_penalty: need d >= 1");
    }
    return {n, 0.5 * d, 0.0, static_cast<double>(d), 1};
}

ScorePenalty singular_penalty(double n, int k, bool q_in_null) {
    if (!(n > std::numbers::e)) {
        throw DomainError("singular_penalty: need n > e so that log log n is defined and positive");
    }
    if (k < 1) {
        throw DomainError("singular_penalty: need k >= 1; use regular_penalty for k = 0");
    }
    if (q_in_null) {
        return {n, 1.5, static_cast<double>(k), 1.5, k + 1};
    }
    return {n, 1.5, 0.0, 1.5, 1};
}

double score_difference(double n, int k) {
    if (!(n > std::numbers::e)) {
        throw DomainError("score_difference: need n > e");
    }
    if (k < 0) {
        throw DomainError("score_difference: need k >= 0");
    }
    const double ln_n = std::log(n);
    return 0.5 * ln_n - static_cast<double>(k) * std::log(ln_n);
}

namespace {

double round_significant(double x, int digits) {
    if (x == 0.0) {
        return 0.0;
    }
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::round(x * scale) / scale;
}

}  // namespace

std::vector<double> crossing_points(int k, double n_max) {
    if (k < 1) {
        throw DomainError("crossing_points: need k >= 1");
    }
    if (!(n_max <= 1e12)) {
        throw DomainError("crossing_points: n_max must not exceed 1e12");
    }
    std::vector<double> roots;
    // Start just above e; score_difference is 1/2 + o(1) there.
    double lo = std::numbers::e * (1.0 + 1e-9);
    if (!(n_max > lo)) {
        return roots;
    }
    double f_lo = score_difference(lo, k);
    while (lo < n_max) {
        const double hi = std::min(lo * 1.05, n_max);
        const double f_hi = score_difference(hi, k);
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo;
            double b = hi;
            for (int iter = 0; iter < 200 && (b - a) > 1e-12 * b; ++iter) {
                const double mid = 0.5 * (a + b);
                if ((score_difference(mid, k) < 0.0) == (f_lo < 0.0)) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push_back(round_significant(0.5 * (a + b), 3));
        }
        lo = hi;
        f_lo = f_hi;
    }
    return roots;
}

double ChainMoments::reparametrized_cov() const {
    double prod = 0.25 * (1.0 - mu_x * mu_x);
    for (double e : eta) {
        prod *= e;
    }
    return prod;
}

ChainMoments chain_moments(const ChainParams& theta) {
    validate(theta);
    ChainMoments m;
    m.eta.reserve(theta.cond.size());
    for (const auto& c : theta.cond) {
        m.eta.push_back(c[1] - c[0]);
    }

    // Exact joint of (X, Z) by summing over every hidden configuration.
    const int k = theta.k();
    double p11 = 0.0;
    double px1 = 0.0;
    double pz1 = 0.0;
    const std::size_t configs = std::size_t{1} << (k + 2);
    for (std::size_t cfg = 0; cfg < configs; ++cfg) {
        // Bit v (from the top) is the level of variable v: 0 = X, k + 1 = Z.
        auto level = [&](int v) { return static_cast<int>((cfg >> (k + 1 - v)) & 1U); };
        double p = level(0) == 1 ? theta.theta_x : 1.0 - theta.theta_x;
        for (int e = 0; e <= k; ++e) {
            const double up = theta.cond[static_cast<std::size_t>(e)][static_cast<std::size_t>(level(e))];
            p *= level(e + 1) == 1 ? up : 1.0 - up;
        }
        const bool x1 = level(0) == 1;
        const bool z1 = level(k + 1) == 1;
        px1 += x1 ? p : 0.0;
        pz1 += z1 ? p : 0.0;
        p11 += (x1 && z1) ? p : 0.0;
    }
    m.mu_x = 2.0 * px1 - 1.0;
    m.mu_z = 2.0 * pz1 - 1.0;
    m.cov_xz = p11 - px1 * pz1;
    return m;
}

}  // namespace chainbf
