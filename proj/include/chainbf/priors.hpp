#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "chainbf/rng.hpp"

namespace chainbf {

/// Joint prior pi over the binary chain X, Y_1, ..., Y_k, Z together with the effective sample
/// size beta. Cells are indexed with X as the most significant bit and Z as the least, so the
/// flat index of (x, y_1, ..., y_k, z) is its binary number. Level 0 of a variable always maps to
/// array slot 0 throughout the library.
class JointPrior {
public:
    /// Throws DomainError unless pi has 2^(k+2) strictly positive entries summing to one
    /// (within 1e-12) and beta > 0.
    JointPrior(int k, std::vector<double> pi, double beta);

    int k() const { return k_; }
    double beta() const { return beta_; }
    const std::vector<double>& pi() const { return pi_; }
    int num_variables() const { return k_ + 2; }

    /// Variable 0 is X, 1..k are the hidden nodes, k+1 is Z.
    int level(std::size_t cell, int variable) const;

    std::array<double, 2> marginal(int variable) const;
    /// [level of a][level of b]
    std::array<std::array<double, 2>, 2> pair_marginal(int a, int b) const;
    std::array<std::array<double, 2>, 2> xz_marginal() const { return pair_marginal(0, k_ + 1); }

private:
    int k_;
    std::vector<double> pi_;
    double beta_;
};

/// All 2^(k+2) cells equal.
JointPrior uniform_prior(int k, double beta);

/// k = 1 prior with pi(i, 0, j) = t/4 and pi(i, 1, j) = (1 - t)/4; requires 0 < t < 1.
JointPrior t_prior(double t, double beta);

/// Hyperparameters of one chain edge: [parent level][child level].
using EdgeHyper = std::array<std::array<double, 2>, 2>;

/// How edge Dirichlet parameters are tied to pi.
enum class EdgeRule {
    /// beta * pi_ab(i, .): joint marginal of the edge pair, consistent across cliques.
    joint_marginal,
    /// beta * pi_{b|a}(. | i): conditional times beta, as the formula is sometimes written.
    conditional,
};

/// Per-node Beta hyperparameters of the chain X -> Y_1 -> ... -> Y_k -> Z.
struct ChainHyperParams {
    int k = 0;
    std::array<double, 2> beta_x{};  ///< slot = level of X
    std::vector<EdgeHyper> edges;    ///< k + 1 edges in chain order
};

ChainHyperParams chain_hyperparams(const JointPrior& p, EdgeRule rule = EdgeRule::joint_marginal);

/// beta * pi_xz, row-major. This is the Dirichlet parameter of the saturated k = 0 model.
std::array<double, 4> saturated_hyperparams(const JointPrior& p);

struct IndependenceHyperParams {
    std::array<double, 2> beta_x;
    std::array<double, 2> beta_z;
};

IndependenceHyperParams independence_hyperparams(const JointPrior& p);

/// A point in the 1 + 2(k+1) dimensional parameter space of the chain.
struct ChainParams {
    double theta_x = 0.5;                     ///< P(X = 1)
    std::vector<std::array<double, 2>> cond;  ///< cond[e][i] = P(child_e = 1 | parent_e = i)

    int k() const { return static_cast<int>(cond.size()) - 1; }
};

/// Throws DomainError if any entry lies outside [0, 1] or there are no edges.
void validate(const ChainParams& theta);

/// Joint distribution of (X, Z) implied by theta, row-major.
std::array<double, 4> chain_xz_distribution(const ChainParams& theta);

/// Draws every block independently from its Beta prior.
ChainParams sample_chain_params(const ChainHyperParams& h, Rng& rng);

/// E[p_xz] under the product prior, row-major. Equals the chain projection of pi, which is
/// pi_xz itself when pi is Markov along the chain.
std::array<double, 4> prior_predictive_xz(const ChainHyperParams& h);

struct BetaParams {
    double a;  ///< weight on level 1
    double b;  ///< weight on level 0
};

/// Law of p_y(1) under t_prior(t, beta): Beta(beta (1 - t), beta t).
BetaParams induced_py_params(double t, double beta = 4.0);

double beta_density(double a, double b, double x);

struct DensityPoint {
    double x;
    double density;
};

std::vector<DensityPoint> beta_density_curve(double a, double b, std::span<const double> grid);

}  // namespace chainbf
