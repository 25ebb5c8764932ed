#include <cmath>
#include <numeric>
#include <random>

#include "chainbf/errors.hpp"
#include "chainbf/priors.hpp"
#include "chainbf/rng.hpp"
#include "doctest.h"

using namespace chainbf;

namespace {

std::vector<double> random_pi(int k, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> pi(std::size_t{1} << (k + 2));
    for (auto& v : pi) v = u(gen);
    const double s = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (auto& v : pi) v /= s;
    return pi;
}

// A pi that factorizes along X -> Y1 -> ... -> Z.
std::vector<double> markov_pi(int k, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.1, 0.9);
    const double px = u(gen);
    std::vector<std::array<double, 2>> cond(static_cast<std::size_t>(k + 1));
    for (auto& c : cond) c = {u(gen), u(gen)};
    const int vars = k + 2;
    std::vector<double> pi(std::size_t{1} << vars);
    for (std::size_t cell = 0; cell < pi.size(); ++cell) {
        auto lv = [&](int v) { return static_cast<int>((cell >> (vars - 1 - v)) & 1U); };
        double p = lv(0) ? px : 1.0 - px;
        for (int e = 0; e <= k; ++e) {
            const double up = cond[static_cast<std::size_t>(e)][static_cast<std::size_t>(lv(e))];
            p *= lv(e + 1) ? up : 1.0 - up;
        }
        pi[cell] = p;
    }
    return pi;
}

double summed(const std::vector<double>& pi, int vars, int a, int ia, int b, int ib) {
    double s = 0.0;
    for (std::size_t cell = 0; cell < pi.size(); ++cell) {
        const int la = static_cast<int>((cell >> (vars - 1 - a)) & 1U);
        const int lb = static_cast<int>((cell >> (vars - 1 - b)) & 1U);
        if (la == ia && lb == ib) s += pi[cell];
    }
    return s;
}

}  // namespace

TEST_CASE("JointPrior validation") {
    CHECK_NOTHROW(JointPrior(1, std::vector<double>(8, 0.125), 4.0));
    CHECK_THROWS_AS(JointPrior(1, std::vector<double>(4, 0.25), 4.0), DomainError);
    CHECK_THROWS_AS(JointPrior(1, std::vector<double>(8, 0.125), 0.0), DomainError);
    std::vector<double> bad(8, 0.125);
    bad[0] = 0.0;
    bad[1] = 0.25;
    CHECK_THROWS_AS(JointPrior(1, bad, 4.0), DomainError);
    std::vector<double> off(8, 0.125);
    off[0] += 1e-9;
    CHECK_THROWS_AS(JointPrior(1, off, 4.0), DomainError);
    CHECK_THROWS_AS(t_prior(0.0, 4.0), DomainError);
    CHECK_THROWS_AS(t_prior(1.0, 4.0), DomainError);
}

TEST_CASE("uniform prior hyperparameters") {
    const ChainHyperParams h = chain_hyperparams(uniform_prior(1, 4.0));
    CHECK(h.k == 1);
    CHECK(h.beta_x[0] == doctest::Approx(2.0));
    CHECK(h.beta_x[1] == doctest::Approx(2.0));
    REQUIRE(h.edges.size() == 2);
    for (const auto& e : h.edges)
        for (const auto& row : e)
            for (double v : row) CHECK(v == doctest::Approx(1.0));
    const auto s = saturated_hyperparams(uniform_prior(3, 4.0));
    for (double v : s) CHECK(v == doctest::Approx(1.0));
    const auto ind = independence_hyperparams(uniform_prior(2, 4.0));
    CHECK(ind.beta_x[0] == doctest::Approx(2.0));
    CHECK(ind.beta_z[1] == doctest::Approx(2.0));
}

TEST_CASE("t prior hyperparameters match summation over pi") {
    for (double t : {0.5, 0.3, 0.2, 0.05}) {
        const JointPrior p = t_prior(t, 4.0);
        const ChainHyperParams h = chain_hyperparams(p);
        // X -> Y: pi(i, j, .) summed over z
        CHECK(h.edges[0][0][0] == doctest::Approx(2.0 * t));
        CHECK(h.edges[0][1][1] == doctest::Approx(2.0 * (1.0 - t)));
        // Y -> Z
        CHECK(h.edges[1][0][0] == doctest::Approx(2.0 * t));
        CHECK(h.edges[1][0][1] == doctest::Approx(2.0 * t));
        CHECK(h.edges[1][1][0] == doctest::Approx(2.0 * (1.0 - t)));
        const auto s = saturated_hyperparams(p);
        for (double v : s) CHECK(v == doctest::Approx(1.0));
        const BetaParams bp = induced_py_params(t);
        CHECK(bp.a == doctest::Approx(4.0 * (1.0 - t)));
        CHECK(bp.b == doctest::Approx(4.0 * t));
    }
}

TEST_CASE("chain hyperparameters equal beta times pair sums for random pi") {
    std::mt19937_64 gen(11);
    for (int k = 1; k <= 3; ++k) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto pi = random_pi(k, gen);
            const JointPrior p(k, pi, 3.5);
            const ChainHyperParams h = chain_hyperparams(p);
            const int vars = k + 2;
            for (int e = 0; e <= k; ++e)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        CHECK(h.edges[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                              doctest::Approx(3.5 * summed(pi, vars, e, i, e + 1, j)).epsilon(1e-12));
            const ChainHyperParams hc = chain_hyperparams(p, EdgeRule::conditional);
            const double parent0 = summed(pi, vars, 0, 0, 0, 0);
            CHECK(hc.edges[0][0][1] == doctest::Approx(3.5 * summed(pi, vars, 0, 0, 1, 1) / parent0));
        }
    }
}

TEST_CASE("prior predictive equals pi_xz for chain-Markov pi") {
    std::mt19937_64 gen(5);
    for (int k = 1; k <= 4; ++k) {
        const JointPrior p(k, markov_pi(k, gen), 4.0);
        const auto pred = prior_predictive_xz(chain_hyperparams(p));
        const auto m = p.xz_marginal();
        double total = 0.0;
        for (int c = 0; c < 4; ++c) {
            CHECK(pred[static_cast<std::size_t>(c)] == doctest::Approx(m[c / 2][c % 2]).epsilon(1e-12));
            total += pred[static_cast<std::size_t>(c)];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("chain xz distribution and validation") {
    ChainParams theta{0.3, {{0.2, 0.7}, {0.4, 0.9}}};
    const auto d = chain_xz_distribution(theta);
    const double py1_x0 = 0.2, py1_x1 = 0.7;
    const double pz1_x0 = (1 - py1_x0) * 0.4 + py1_x0 * 0.9;
    const double pz1_x1 = (1 - py1_x1) * 0.4 + py1_x1 * 0.9;
    CHECK(d[1] == doctest::Approx(0.7 * pz1_x0));
    CHECK(d[3] == doctest::Approx(0.3 * pz1_x1));
    CHECK(d[0] + d[1] + d[2] + d[3] == doctest::Approx(1.0));
    ChainParams bad{0.3, {{1.2, 0.5}}};
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("sampled chain parameters have the Beta means") {
    const ChainHyperParams h = chain_hyperparams(t_prior(0.2, 4.0));
    Rng rng = Rng::substream(3, 0);
    double sx = 0.0, s01 = 0.0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const ChainParams th = sample_chain_params(h, rng);
        sx += th.theta_x;
        s01 += th.cond[0][1];
    }
    CHECK(sx / n == doctest::Approx(0.5).epsilon(0.02));
    // P(Y = 1 | X = 1) ~ Beta(1.6, 0.4), mean 0.8
    CHECK(s01 / n == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("beta density curve") {
    const double xs[] = {0.25, 0.5, 0.75};
    const auto curve = beta_density_curve(2.0, 2.0, xs);
    REQUIRE(curve.size() == 3);
    CHECK(curve[1].density == doctest::Approx(1.5));
    CHECK(curve[0].density == doctest::Approx(6.0 * 0.25 * 0.75));
    CHECK_THROWS(beta_density(2.0, 2.0, 1.5));
}

TEST_CASE("rng substreams are reproducible and distinct") {
    Rng a = Rng::substream(42, 3), b = Rng::substream(42, 3), c = Rng::substream(42, 4);
    const double va = a.uniform();
    CHECK(va == b.uniform());
    CHECK(va != c.uniform());
    Rng r = Rng::substream(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = r.beta(0.3, 0.4);
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
}
