#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "chainbf/conjugate.hpp"
#include "chainbf/priors.hpp"
#include "chainbf/tables.hpp"

namespace chainbf {

/// Size guards for the exact routes. Beyond them the exact operations throw FeasibilityError.
struct ExactLimits {
    static constexpr double kMaxEnumerationTerms = 1e7;  ///< prod (u_ij + 1), k = 1 only
    static constexpr double kMaxDpStates = 1e5;          ///< prod (u_ij + 1)
    static constexpr int kMaxDpHidden = 4;
    static constexpr double kMaxDpWork = 2e10;  ///< estimated kernel multiply-adds
};

/// Number of latent split states prod (u_ij + 1).
double latent_state_count(const Table2x2& t);

/// Estimated multiply-add count of log_ml_chain_exact for k hidden nodes.
double dp_work_estimate(const Table2x2& t, int k);

bool enumeration_feasible(const Table2x2& t);
bool dp_feasible(const Table2x2& t, int k);

/// Number of observations in each cell that sit at latent level 1 of the single hidden node.
struct LatentSplitState {
    std::array<Count, 4> v{};  ///< row-major, 0 <= v_ij <= u_ij

    bool fits(const Table2x2& t) const;
};

/// Log of the k = 1 integrand summed in log_ml_chain_exact_k1: binomial multiplicity of the
/// split times the Beta ratios of the X, Y|X and Z|Y blocks given the completed counts.
double log_split_weight(const Table2x2& t, const ChainHyperParams& h, const LatentSplitState& s);

/// Exact marginal likelihood of the one-hidden-node chain by summing over every latent split.
LogMLEstimate log_ml_chain_exact_k1(const Table2x2& t, const ChainHyperParams& h);

/// Exact marginal likelihood of the k-hidden-node chain by a layered recursion over per-cell
/// latent counts. Requires 1 <= k <= 4 and the state/work guards in ExactLimits.
LogMLEstimate log_ml_chain_exact(const Table2x2& t, const ChainHyperParams& h);

struct MonteCarloOptions {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    int batches = 100;
    int threads = 1;
};

/// Prior-sampling estimate of the marginal likelihood with a batch-means standard error on the
/// log scale. Batch b always draws from substream (seed, b), so the result does not depend on
/// the thread count.
LogMLEstimate log_ml_chain_mc(const Table2x2& t, const ChainHyperParams& h, const MonteCarloOptions& opts);

enum class ChainMethod { automatic, enumeration, dp, monte_carlo };

struct BayesFactor {
    int k = 0;
    double value = 1.0;
    double log_value = 0.0;
    LogMLEstimate numerator;
    LogMLEstimate denominator;
};

/// BF_k: chain embedding with p.k() hidden nodes against the independence model built from
/// the same (pi, beta). For k = 0 the numerator is the saturated Dirichlet model.
/// ChainMethod::automatic takes enumeration (k = 1), then the layered recursion, then Monte Carlo.
BayesFactor bf_k(const Table2x2& t, const JointPrior& p, ChainMethod method = ChainMethod::automatic,
                 const MonteCarloOptions& mc = {}, EdgeRule rule = EdgeRule::joint_marginal);

struct JensenBound {
    int k = 0;
    double log_c_of_u = 0.0;
    double c_of_u = 1.0;
    double log_bound = 0.0;
    double bound = 0.0;
};

/// C(u) (5/9) (2/5)^k with C(u) = Gamma(4)/Gamma(2)^2 B(u0.+2, u1.+2) B(u.0+1, u.1+1), for the
/// uniform beta = 4 prior.
JensenBound jensen_bound(const Table2x2& t, int k);

}  // namespace chainbf
