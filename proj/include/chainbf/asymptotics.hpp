#pragma once

#include <cstdint>
#include <vector>

#include "chainbf/priors.hpp"
#include "chainbf/tables.hpp"

namespace chainbf {

/// -sum q_ij ln q_ij with 0 ln 0 = 0.
double entropy(const Dist2x2& q);

/// Coefficients of the expansion E F_n = n S_q - leading log n + loglog log log n + O(1).
struct ScorePenalty {
    double n = 0.0;
    double leading = 0.0;
    double loglog = 0.0;
    double d_or_lambda = 0.0;  ///< dimension d (regular) or learning coefficient lambda (singular)
    int multiplicity = 1;

    /// -leading log n + loglog log log n, the part of E F_n beyond n S_q.
    double penalty_term() const;
};

/// Regular model of dimension d: leading = d / 2, multiplicity 1. Requires n >= 2, d >= 1.
ScorePenalty regular_penalty(double n, int d);

/// Chain embedding with k >= 1 hidden nodes. When the truth lies in the independence model the
/// learning coefficient is 3/2 with multiplicity k + 1 (adding k log log n); otherwise the
/// expansion matches the regular d = 3 case. Requires n > e.
ScorePenalty singular_penalty(double n, int k, bool q_in_null);

/// (1/2) ln n - k ln ln n: independence minus chain-embedding score for data from the null.
double score_difference(double n, int k);

/// Sample sizes in (e, n_max] where score_difference(., k) changes sign, to 3 significant digits.
std::vector<double> crossing_points(int k, double n_max);

/// Moments of the chain in +-1 coding (mu = 2 P(. = 1) - 1), edge regression coefficients
/// eta = P(child = 1 | parent = 1) - P(child = 1 | parent = 0), and the covariance of the
/// 0/1-coded X and Z from the exact joint distribution of the chain.
struct ChainMoments {
    double mu_x = 0.0;
    double mu_z = 0.0;
    std::vector<double> eta;
    double cov_xz = 0.0;

    /// (1/4)(1 - mu_x^2) prod eta.
    double reparametrized_cov() const;
};

ChainMoments chain_moments(const ChainParams& theta);

}  // namespace chainbf
