#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chainbf/priors.hpp"
#include "chainbf/tables.hpp"

namespace chainbf {

enum class Method { closed_form, enumeration, dp, monte_carlo };

std::string_view to_string(Method m);

/// A log marginal likelihood with provenance. The standard error is on the log scale and is
/// present only for Monte Carlo estimates.
struct LogMLEstimate {
    double log_value = 0.0;
    Method method = Method::closed_form;
    std::optional<double> se;
    std::optional<std::uint64_t> n_samples;
    std::optional<std::uint64_t> seed;
};

/// log L for the saturated Dirichlet model: log B(beta_xz + u) - log B(beta_xz).
LogMLEstimate log_ml_saturated(const Table2x2& t, const std::array<double, 4>& beta_xz);

/// log L for independence of X and Z with Beta(beta_x) and Beta(beta_z) margins.
LogMLEstimate log_ml_independence(const Table2x2& t, const std::array<double, 2>& beta_x,
                                  const std::array<double, 2>& beta_z);

/// Saturated versus independence Bayes factor for the k = 0 embedding, using the
/// (X, Z) margins of p.
double bf0(const Table2x2& t, const JointPrior& p);

/// log of bf0.
double log_bf0(const Table2x2& t, const JointPrior& p);

/// Candidate model with log marginal likelihood and log prior odds against the reference.
struct ModelEntry {
    double log_ml = 0.0;
    double log_prior_odds = 0.0;
};

/// Indices ordered by log_ml + log_prior_odds, best first; ties keep input order.
std::vector<std::size_t> rank_models(std::span<const ModelEntry> entries);

}  // namespace chainbf
