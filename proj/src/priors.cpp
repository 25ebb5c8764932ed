#include "chainbf/priors.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "chainbf/errors.hpp"
#include "chainbf/special_fns.hpp"

namespace chainbf {

namespace {

constexpr int kMaxHidden = 24;

void require_open_unit(double t, const char* what) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError(std::string(what) + ": t must lie in (0, 1), got " + std::to_string(t));
    }
}

}  // namespace

JointPrior::JointPrior(int k, std::vector<double> pi, double beta) : k_(k), pi_(std::move(pi)), beta_(beta) {
    if (k < 0 || k > kMaxHidden) {
        throw DomainError("JointPrior: k must lie in [0, " + std::to_string(kMaxHidden) + "]");
    }
    if (pi_.size() != (std::size_t{1} << (k + 2))) {
        throw DomainError("JointPrior: pi must have 2^(k+2) entries");
    }
    double sum = 0.0;
    for (double v : pi_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("JointPrior: pi must be strictly positive");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("JointPrior: pi must sum to one");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("JointPrior: beta must be positive");
    }
}

int JointPrior::level(std::size_t cell, int variable) const {
    return static_cast<int>((cell >> (k_ + 1 - variable)) & 1U);
}

std::array<double, 2> JointPrior::marginal(int variable) const {
    std::array<double, 2> m{};
    for (std::size_t c = 0; c < pi_.size(); ++c) {
        m[static_cast<std::size_t>(level(c, variable))] += pi_[c];
    }
    return m;
}

std::array<std::array<double, 2>, 2> JointPrior::pair_marginal(int a, int b) const {
    std::array<std::array<double, 2>, 2> m{};
    for (std::size_t c = 0; c < pi_.size(); ++c) {
        m[static_cast<std::size_t>(level(c, a))][static_cast<std::size_t>(level(c, b))] += pi_[c];
    }
    return m;
}

JointPrior uniform_prior(int k, double beta) {
    if (k < 0 || k > kMaxHidden) {
        throw DomainError("uniform_prior: k out of range");
    }
    const std::size_t cells = std::size_t{1} << (k + 2);
    return JointPrior(k, std::vector<double>(cells, 1.0 / static_cast<double>(cells)), beta);
}

JointPrior t_prior(double t, double beta) {
    require_open_unit(t, "t_prior");
    std::vector<double> pi(8);
    for (std::size_t c = 0; c < pi.size(); ++c) {
        const bool y = ((c >> 1) & 1U) != 0;
        pi[c] = y ? (1.0 - t) / 4.0 : t / 4.0;
    }
    return JointPrior(1, std::move(pi), beta);
}

ChainHyperParams chain_hyperparams(const JointPrior& p, EdgeRule rule) {
    ChainHyperParams h;
    h.k = p.k();
    const auto px = p.marginal(0);
    h.beta_x = {p.beta() * px[0], p.beta() * px[1]};
    h.edges.resize(static_cast<std::size_t>(p.k() + 1));
    for (int e = 0; e <= p.k(); ++e) {
        const auto joint = p.pair_marginal(e, e + 1);
        const auto parent = p.marginal(e);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                const double w = rule == EdgeRule::joint_marginal ? joint[i][j] : joint[i][j] / parent[i];
                h.edges[static_cast<std::size_t>(e)][i][j] = p.beta() * w;
            }
        }
    }
    for (const auto& edge : h.edges) {
        for (const auto& row : edge) {
            for (double v : row) {
                if (!(v > 0.0)) {
                    throw DomainError("chain_hyperparams: zero marginal gives a non-positive hyperparameter");
                }
            }
        }
    }
    return h;
}

std::array<double, 4> saturated_hyperparams(const JointPrior& p) {
    const auto m = p.xz_marginal();
    return {p.beta() * m[0][0], p.beta() * m[0][1], p.beta() * m[1][0], p.beta() * m[1][1]};
}

IndependenceHyperParams independence_hyperparams(const JointPrior& p) {
    const auto px = p.marginal(0);
    const auto pz = p.marginal(p.k() + 1);
    return {{p.beta() * px[0], p.beta() * px[1]}, {p.beta() * pz[0], p.beta() * pz[1]}};
}

void validate(const ChainParams& theta) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (theta.cond.empty()) {
        throw DomainError("ChainParams: need at least one edge");
    }
    if (!in_unit(theta.theta_x)) {
        throw DomainError("ChainParams: theta_x outside [0, 1]");
    }
    for (const auto& c : theta.cond) {
        if (!in_unit(c[0]) || !in_unit(c[1])) {
            throw DomainError("ChainParams: conditional probability outside [0, 1]");
        }
    }
}

std::array<double, 4> chain_xz_distribution(const ChainParams& theta) {
    std::array<double, 4> q{};
    for (int i = 0; i < 2; ++i) {
        // P(current node = 1 | X = i), pushed down the chain.
        double p1 = theta.cond[0][static_cast<std::size_t>(i)];
        for (std::size_t e = 1; e < theta.cond.size(); ++e) {
            p1 = p1 * theta.cond[e][1] + (1.0 - p1) * theta.cond[e][0];
        }
        const double px = i == 1 ? theta.theta_x : 1.0 - theta.theta_x;
        q[static_cast<std::size_t>(2 * i)] = px * (1.0 - p1);
        q[static_cast<std::size_t>(2 * i + 1)] = px * p1;
    }
    return q;
}

ChainParams sample_chain_params(const ChainHyperParams& h, Rng& rng) {
    ChainParams theta;
    theta.theta_x = rng.beta(h.beta_x[1], h.beta_x[0]);
    theta.cond.resize(h.edges.size());
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        for (std::size_t i = 0; i < 2; ++i) {
            theta.cond[e][i] = rng.beta(h.edges[e][i][1], h.edges[e][i][0]);
        }
    }
    return theta;
}

std::array<double, 4> prior_predictive_xz(const ChainHyperParams& h) {
    ChainParams mean;
    mean.theta_x = h.beta_x[1] / (h.beta_x[0] + h.beta_x[1]);
    mean.cond.resize(h.edges.size());
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        for (std::size_t i = 0; i < 2; ++i) {
            mean.cond[e][i] = h.edges[e][i][1] / (h.edges[e][i][0] + h.edges[e][i][1]);
        }
    }
    // The blocks are independent and p_xz is multilinear in them.
    return chain_xz_distribution(mean);
}

BetaParams induced_py_params(double t, double beta) {
    require_open_unit(t, "induced_py_params");
    return {beta * (1.0 - t), beta * t};
}

double beta_density(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) {
        throw DomainError("beta_density: parameters must be positive");
    }
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("beta_density: x must lie strictly inside (0, 1)");
    }
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

std::vector<DensityPoint> beta_density_curve(double a, double b, std::span<const double> grid) {
    std::vector<DensityPoint> out;
    out.reserve(grid.size());
    for (double x : grid) {
        out.push_back({x, beta_density(a, b, x)});
    }
    return out;
}

}  // namespace chainbf
