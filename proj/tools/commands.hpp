#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chainbf/latent_chain.hpp"
#include "chainbf/priors.hpp"
#include "chainbf/tables.hpp"
#include "json.hpp"

namespace chainbf::cli {

enum class Format { json, csv };

struct PriorSpec {
    bool uniform = true;
    double t = 0.5;

    std::string label() const;
    /// Prior for k hidden nodes; the t family exists only for k <= 1 (k = 0 uses its (X, Z) margin).
    JointPrior build(int k, double beta) const;
};

/// "uniform" or "t=<value>".
PriorSpec parse_prior(const std::string& text);

/// "3", "1,2,4" or an inclusive range "1..5".
std::vector<int> parse_k_list(const std::string& text);

ChainMethod parse_method(const std::string& text);
EdgeRule parse_edge_rule(const std::string& text);

struct RunConfig {
    std::string command;
    std::optional<Table2x2> table;
    PriorSpec prior;
    double beta = 4.0;
    std::vector<int> ks;
    ChainMethod method = ChainMethod::automatic;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    int threads = 1;
    EdgeRule edge_rule = EdgeRule::joint_marginal;
    Format format = Format::json;
    std::string figure;
    double n_max = 1e12;
    std::optional<std::string> out;
};

nlohmann::json cmd_bf(const RunConfig& cfg);
nlohmann::json cmd_fisher(const RunConfig& cfg);
nlohmann::json cmd_bound(const RunConfig& cfg);
nlohmann::json cmd_crossings(const RunConfig& cfg);
/// CSV text for `figures betas` or `figures scores`.
std::string cmd_figures(const RunConfig& cfg);

/// Renders a bf/fisher/bound/crossings report as CSV rows.
std::string to_csv(const nlohmann::json& report);

/// Parses argv, dispatches, writes the report. Exit codes: 0 ok, 2 bad input, 3 feasibility refusal.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chainbf::cli
