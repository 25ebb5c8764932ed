#include "chainbf/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chainbf/errors.hpp"
#include "chainbf/special_fns.hpp"

namespace chainbf {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::enumeration: return "enumeration";
        case Method::dp: return "dp";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

namespace {

template <std::size_t N>
double log_beta_ratio(const std::array<double, N>& alpha, const std::array<Count, N>& counts) {
    std::array<double, N> post{};
    for (std::size_t i = 0; i < N; ++i) {
        post[i] = alpha[i] + static_cast<double>(counts[i]);
    }
    return log_multivariate_beta(post) - log_multivariate_beta(alpha);
}

}  // namespace

LogMLEstimate log_ml_saturated(const Table2x2& t, const std::array<double, 4>& beta_xz) {
    return {log_beta_ratio(beta_xz, t.cells()), Method::closed_form, {}, {}, {}};
}

LogMLEstimate log_ml_independence(const Table2x2& t, const std::array<double, 2>& beta_x,
                                  const std::array<double, 2>& beta_z) {
    const Margins m = margins(t);
    return {log_beta_ratio(beta_x, m.x) + log_beta_ratio(beta_z, m.z), Method::closed_form, {}, {}, {}};
}

double log_bf0(const Table2x2& t, const JointPrior& p) {
    const auto ind = independence_hyperparams(p);
    return log_ml_saturated(t, saturated_hyperparams(p)).log_value -
           log_ml_independence(t, ind.beta_x, ind.beta_z).log_value;
}

double bf0(const Table2x2& t, const JointPrior& p) { return std::exp(log_bf0(t, p)); }

std::vector<std::size_t> rank_models(std::span<const ModelEntry> entries) {
    if (entries.empty()) {
        throw std::invalid_argument("rank_models: need at least one entry");
    }
    for (const auto& e : entries) {
        if (!std::isfinite(e.log_ml) || !std::isfinite(e.log_prior_odds)) {
            throw std::invalid_argument("rank_models: scores must be finite");
        }
    }
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return entries[a].log_ml + entries[a].log_prior_odds > entries[b].log_ml + entries[b].log_prior_odds;
    });
    return order;
}

}  // namespace chainbf
