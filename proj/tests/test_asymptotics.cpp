#include <cmath>
#include <random>

#include "chainbf/asymptotics.hpp"
#include "chainbf/errors.hpp"
#include "doctest.h"

using namespace chainbf;

TEST_CASE("score difference values") {
    CHECK(score_difference(100.0, 1) == doctest::Approx(0.775405).epsilon(1e-6));
    CHECK(score_difference(1000.0, 2) == doctest::Approx(-0.411412).epsilon(1e-6));
    CHECK(score_difference(50.0, 0) == doctest::Approx(0.5 * std::log(50.0)));
    CHECK_THROWS_AS(score_difference(2.0, 1), DomainError);
    CHECK_THROWS_AS(score_difference(100.0, -1), DomainError);
}

TEST_CASE("score difference is independence penalty minus chain penalty") {
    for (int k = 1; k <= 5; ++k) {
        for (double n : {10.0, 1e3, 1e6}) {
            const double regular = regular_penalty(n, 2).penalty_term();
            const double singular = singular_penalty(n, k, true).penalty_term();
            CHECK(regular - singular == doctest::Approx(score_difference(n, k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("singular constants") {
    const ScorePenalty in = singular_penalty(1e4, 3, true);
    CHECK(in.d_or_lambda == 1.5);
    CHECK(in.multiplicity == 4);
    CHECK(in.loglog == 3.0);
    const ScorePenalty out = singular_penalty(1e4, 3, false);
    CHECK(out.multiplicity == 1);
    CHECK(out.loglog == 0.0);
    CHECK(regular_penalty(1e4, 2).leading == 1.0);
}

TEST_CASE("crossing points") {
    CHECK(crossing_points(1, 1e12).empty());
    for (int k = 2; k <= 5; ++k) {
        for (double n : crossing_points(k, 1e12)) {
            const double lo = score_difference(n * 0.99, k);
            const double hi = score_difference(n * 1.01, k);
            CHECK(lo * hi < 0.0);
        }
    }
    const auto k2 = crossing_points(2, 1e12);
    REQUIRE(k2.size() == 2);
    CHECK(k2[1] == doctest::Approx(5500.0).epsilon(0.01));
    CHECK(crossing_points(5, 1e12).size() == 1);
    CHECK_THROWS(crossing_points(2, 1e13));
}

TEST_CASE("reparametrization identity over random parameters") {
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 1; k <= 3; ++k) {
        for (int rep = 0; rep < 100; ++rep) {
            ChainParams theta;
            theta.theta_x = u(gen);
            theta.cond.resize(static_cast<std::size_t>(k + 1));
            for (auto& c : theta.cond) c = {u(gen), u(gen)};
            const ChainMoments m = chain_moments(theta);
            CHECK(std::abs(m.cov_xz - m.reparametrized_cov()) <= 1e-12);
            CHECK(m.eta.size() == static_cast<std::size_t>(k + 1));
        }
    }
}

TEST_CASE("entropy") {
    CHECK(entropy(Dist2x2::uniform()) == doctest::Approx(std::log(4.0)));
    CHECK(entropy(Dist2x2({1.0, 0.0, 0.0, 0.0})) == doctest::Approx(0.0));
}
