#include <cmath>
#include <limits>

#include "chainbf/special_fns.hpp"
#include "doctest.h"

using namespace chainbf;

TEST_CASE("log_gamma agrees with std::lgamma across the range") {
    for (double x = 1e-3; x < 2e3; x *= 1.07) {
        const double ref = std::lgamma(x);
        CHECK(std::abs(log_gamma(x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
    for (int n = 1; n < 170; ++n) {
        const double ref = std::lgamma(static_cast<double>(n));
        CHECK(std::abs(log_gamma(n) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("log_gamma satisfies the recurrence and known values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    for (double x = 0.3; x < 60.0; x += 0.37) {
        CHECK(log_gamma(x + 1.0) - log_gamma(x) == doctest::Approx(std::log(x)).epsilon(1e-11));
    }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS(log_gamma(0.0));
    CHECK_THROWS(log_gamma(-1.5));
    CHECK_THROWS(log_gamma(std::numeric_limits<double>::quiet_NaN()));
}

TEST_CASE("beta functions") {
    CHECK(std::exp(log_beta(2.0, 3.0)) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(log_multivariate_beta({2.0, 3.0}) == doctest::Approx(log_beta(2.0, 3.0)).epsilon(1e-14));
    // B(1,1,1,1) = Gamma(1)^4 / Gamma(4) = 1/6
    CHECK(std::exp(log_multivariate_beta({1.0, 1.0, 1.0, 1.0})) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK_THROWS(log_multivariate_beta({1.0, -1.0}));
}

TEST_CASE("log_choose and log_add_exp") {
    CHECK(std::exp(log_choose(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
    CHECK(log_choose(7, 0) == 0.0);
    CHECK(log_choose(7, 7) == 0.0);
    CHECK(log_add_exp(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK(log_add_exp(ninf, 1.5) == 1.5);
    CHECK(log_add_exp(ninf, ninf) == ninf);
}
