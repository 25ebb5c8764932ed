#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "chainbf/asymptotics.hpp"
#include "chainbf/conjugate.hpp"
#include "chainbf/errors.hpp"
#include "chainbf/version.hpp"

namespace chainbf::cli {

using nlohmann::json;

namespace {

json number_or_flag(const std::optional<double>& v) {
    if (!v) {
        return nullptr;
    }
    if (std::isinf(*v)) {
        return *v > 0 ? "inf" : "-inf";
    }
    return *v;
}

json estimate_json(const LogMLEstimate& e) {
    json j{{"log_value", e.log_value}, {"method", std::string(to_string(e.method))}};
    if (e.se) {
        j["se"] = *e.se;
    }
    if (e.n_samples) {
        j["n_samples"] = *e.n_samples;
    }
    if (e.seed) {
        j["seed"] = *e.seed;
    }
    return j;
}

std::string method_label(ChainMethod m) {
    switch (m) {
        case ChainMethod::automatic: return "auto";
        case ChainMethod::enumeration: return "enumeration";
        case ChainMethod::dp: return "dp";
        case ChainMethod::monte_carlo: return "monte_carlo";
    }
    return "auto";
}

std::string edge_rule_label(EdgeRule r) { return r == EdgeRule::joint_marginal ? "joint" : "conditional"; }

json header(const RunConfig& cfg) {
    json input{{"beta", cfg.beta},
               {"prior", cfg.prior.label()},
               {"k", cfg.ks},
               {"method", method_label(cfg.method)},
               {"n_samples", cfg.n_samples},
               {"seed", cfg.seed},
               {"edge_rule", edge_rule_label(cfg.edge_rule)}};
    if (cfg.table) {
        input["table"] = cfg.table->cells();
    }
    return {{"tool", "chainbf"}, {"version", kVersion}, {"command", cfg.command}, {"input", input}};
}

const Table2x2& require_table(const RunConfig& cfg) {
    if (!cfg.table) {
        throw std::invalid_argument("--table is required");
    }
    return *cfg.table;
}

MonteCarloOptions mc_options(const RunConfig& cfg) {
    MonteCarloOptions mc;
    mc.n_samples = cfg.n_samples;
    mc.seed = cfg.seed;
    mc.threads = cfg.threads;
    return mc;
}

std::string csv_cell(const json& v) {
    if (v.is_null()) {
        return "NA";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_float()) {
        std::ostringstream s;
        s << std::setprecision(12) << v.get<double>();
        return s.str();
    }
    return v.dump();
}

std::string rows_to_csv(const json& rows, const std::vector<std::string>& columns) {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << csv_cell(row.contains(columns[c]) ? row[columns[c]] : json(nullptr));
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string PriorSpec::label() const {
    if (uniform) {
        return "uniform";
    }
    std::ostringstream s;
    s << "t=" << std::setprecision(17) << t;
    return s.str();
}

JointPrior PriorSpec::build(int k, double beta) const {
    if (uniform) {
        return uniform_prior(k, beta);
    }
    if (k == 1) {
        return t_prior(t, beta);
    }
    if (k == 0) {
        const auto m = t_prior(t, beta).xz_marginal();
        return JointPrior(0, {m[0][0], m[0][1], m[1][0], m[1][1]}, beta);
    }
    throw std::invalid_argument("the t prior is defined for k = 1 only");
}

PriorSpec parse_prior(const std::string& text) {
    if (text == "uniform") {
        return {};
    }
    if (text.rfind("t=", 0) == 0) {
        PriorSpec spec;
        spec.uniform = false;
        std::size_t used = 0;
        try {
            spec.t = std::stod(text.substr(2), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse prior '" + text + "'");
        }
        if (used != text.size() - 2 || !(spec.t > 0.0 && spec.t < 1.0)) {
            throw std::invalid_argument("prior t must be a number in (0, 1)");
        }
        return spec;
    }
    throw std::invalid_argument("prior must be 'uniform' or 't=<value>'");
}

std::vector<int> parse_k_list(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse k list '" + text + "'");
        }
        if (used != s.size() || v < 0) {
            throw std::invalid_argument("k values must be non-negative integers");
        }
        return v;
    };
    std::vector<int> ks;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("empty k range '" + text + "'");
        }
        for (int k = lo; k <= hi; ++k) {
            ks.push_back(k);
        }
        return ks;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ks.push_back(to_int(item));
    }
    if (ks.empty()) {
        throw std::invalid_argument("k list is empty");
    }
    return ks;
}

ChainMethod parse_method(const std::string& text) {
    if (text == "auto") return ChainMethod::automatic;
    if (text == "enumeration") return ChainMethod::enumeration;
    if (text == "dp") return ChainMethod::dp;
    if (text == "monte_carlo" || text == "mc") return ChainMethod::monte_carlo;
    throw std::invalid_argument("method must be auto, enumeration, dp or monte_carlo");
}

EdgeRule parse_edge_rule(const std::string& text) {
    if (text == "joint") return EdgeRule::joint_marginal;
    if (text == "conditional") return EdgeRule::conditional;
    throw std::invalid_argument("edge rule must be 'joint' or 'conditional'");
}

json cmd_bf(const RunConfig& cfg) {
    const Table2x2& t = require_table(cfg);
    json report = header(cfg);
    const JointPrior base = cfg.prior.build(0, cfg.beta);
    report["bf0"] = {{"value", bf0(t, base)}, {"log_value", log_bf0(t, base)}, {"method", "closed_form"}};
    json results = json::array();
    for (int k : cfg.ks) {
        const BayesFactor bf = bf_k(t, cfg.prior.build(k, cfg.beta), cfg.method, mc_options(cfg), cfg.edge_rule);
        json row{{"k", k},
                 {"bf", bf.value},
                 {"log_bf", bf.log_value},
                 {"numerator", estimate_json(bf.numerator)},
                 {"denominator", estimate_json(bf.denominator)}};
        results.push_back(row);
    }
    report["results"] = results;
    return report;
}

json cmd_fisher(const RunConfig& cfg) {
    const Table2x2& t = require_table(cfg);
    const FisherResult r = fisher_exact(t);
    json report = header(cfg);
    report["input"].erase("k");
    report["input"].erase("prior");
    report["input"].erase("beta");
    report["input"].erase("method");
    report["input"].erase("n_samples");
    report["input"].erase("edge_rule");
    report["fisher"] = {{"p_two_sided", r.p_two_sided},
                        {"or_conditional_mle", number_or_flag(r.or_conditional_mle)},
                        {"or_sample", number_or_flag(r.or_sample)},
                        {"degenerate", r.degenerate}};
    return report;
}

json cmd_bound(const RunConfig& cfg) {
    const Table2x2& t = require_table(cfg);
    json report = header(cfg);
    report["input"]["prior"] = "uniform";
    report["input"]["beta"] = 4.0;
    json rows = json::array();
    const MonteCarloOptions mc = mc_options(cfg);
    std::optional<double> previous;
    for (int k : cfg.ks) {
        const JensenBound jb = jensen_bound(t, k);
        const BayesFactor bf = bf_k(t, uniform_prior(k, 4.0), cfg.method, mc);
        json row{{"k", k},
                 {"c_of_u", jb.c_of_u},
                 {"log_c_of_u", jb.log_c_of_u},
                 {"bound", jb.bound},
                 {"log_bound", jb.log_bound},
                 {"log_ml", bf.numerator.log_value},
                 {"ml_method", std::string(to_string(bf.numerator.method))},
                 {"bf", bf.value},
                 {"bound_over_l0", std::exp(jb.log_bound - bf.denominator.log_value)},
                 {"holds", bf.numerator.log_value <= jb.log_bound}};
        row["ratio"] = previous ? json(std::exp(jb.log_bound - *previous)) : json(nullptr);
        if (bf.numerator.se) {
            row["se"] = *bf.numerator.se;
        }
        previous = jb.log_bound;
        rows.push_back(row);
    }
    report["rows"] = rows;
    return report;
}

json cmd_crossings(const RunConfig& cfg) {
    json report = header(cfg);
    report["input"].erase("table");
    report["input"]["n_max"] = cfg.n_max;
    json rows = json::array();
    for (int k : cfg.ks) {
        if (k < 1) {
            throw std::invalid_argument("crossings need k >= 1");
        }
        rows.push_back({{"k", k}, {"crossings", crossing_points(k, cfg.n_max)}});
    }
    report["rows"] = rows;
    return report;
}

std::string cmd_figures(const RunConfig& cfg) {
    std::ostringstream out;
    out << std::setprecision(12);
    if (cfg.figure == "betas") {
        out << "t,x,density\n";
        for (double t : {0.5, 0.4, 0.3, 0.2, 0.1}) {
            const BetaParams bp = induced_py_params(t);
            for (int i = 1; i < 200; ++i) {
                const double x = i / 200.0;
                out << t << ',' << x << ',' << beta_density(bp.a, bp.b, x) << '\n';
            }
        }
        return out.str();
    }
    if (cfg.figure == "scores") {
        out << "k,n,delta\n";
        for (int k : cfg.ks) {
            if (k < 1) {
                throw std::invalid_argument("the score figure needs k >= 1");
            }
            for (int i = 0; i <= 140; ++i) {
                const double n = std::pow(10.0, 1.0 + i / 20.0);
                out << k << ',' << n << ',' << score_difference(n, k) << '\n';
            }
        }
        return out.str();
    }
    throw std::invalid_argument("figure must be 'betas' or 'scores'");
}

std::string to_csv(const json& report) {
    const std::string command = report.at("command").get<std::string>();
    if (command == "bf") {
        json rows = json::array();
        rows.push_back({{"k", 0},
                        {"bf", report["bf0"]["value"]},
                        {"log_bf", report["bf0"]["log_value"]},
                        {"method", "closed_form"}});
        for (const auto& r : report["results"]) {
            json row{{"k", r["k"]}, {"bf", r["bf"]}, {"log_bf", r["log_bf"]}, {"method", r["numerator"]["method"]},
                     {"log_ml", r["numerator"]["log_value"]}};
            for (const char* key : {"se", "n_samples", "seed"}) {
                if (r["numerator"].contains(key)) {
                    row[key] = r["numerator"][key];
                }
            }
            rows.push_back(row);
        }
        return rows_to_csv(rows, {"k", "bf", "log_bf", "method", "log_ml", "se", "n_samples", "seed"});
    }
    if (command == "fisher") {
        return rows_to_csv(json::array({report["fisher"]}),
                           {"p_two_sided", "or_conditional_mle", "or_sample", "degenerate"});
    }
    if (command == "bound") {
        return rows_to_csv(report["rows"], {"k", "c_of_u", "bound", "ratio", "log_bound", "log_ml", "ml_method", "se",
                                            "bf", "bound_over_l0", "holds"});
    }
    if (command == "crossings") {
        json rows = json::array();
        for (const auto& r : report["rows"]) {
            for (const auto& n : r["crossings"]) {
                rows.push_back({{"k", r["k"]}, {"n", n}});
            }
        }
        return rows_to_csv(rows, {"k", "n"});
    }
    throw std::invalid_argument("no CSV layout for command " + command);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayes factors and singular BIC scores for 2x2 tables under hidden-chain embeddings"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string table_text;
    std::string prior_text = "uniform";
    std::string k_text;
    std::string method_text = "auto";
    std::string rule_text = "joint";
    std::string format_text = "json";
    std::string out_path;
    RunConfig cfg;

    auto add_table = [&](CLI::App* sub) {
        sub->add_option("--table", table_text, "Counts u00,u01,u10,u11 (row = X level, column = Z level)")
            ->required();
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "Write the report to this file instead of stdout");
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--method", method_text, "auto, enumeration, dp or monte_carlo");
        sub->add_option("--samples", cfg.n_samples, "Monte Carlo sample count");
        sub->add_option("--n-samples", cfg.n_samples, "Alias of --samples");
        sub->add_option("--seed", cfg.seed, "Monte Carlo seed");
        sub->add_option("--threads", cfg.threads, "Monte Carlo worker threads (results do not depend on it)");
    };

    CLI::App* bf = app.add_subcommand("bf", "Bayes factors BF_0 and BF_k");
    add_table(bf);
    bf->add_option("--k", k_text, "Hidden nodes: 1, 1,2 or 1..3")->default_str("1");
    bf->add_option("--prior", prior_text, "uniform or t=<value>");
    bf->add_option("--beta", cfg.beta, "Effective sample size");
    bf->add_option("--edge-rule", rule_text, "joint (default) or conditional");
    add_mc(bf);
    add_common(bf);

    CLI::App* fisher = app.add_subcommand("fisher", "Fisher's exact test");
    add_table(fisher);
    add_common(fisher);

    CLI::App* bound = app.add_subcommand("bound", "Jensen bound against the chain marginal likelihood");
    add_table(bound);
    bound->add_option("--k", k_text, "k range, default 0..5");
    add_mc(bound);
    add_common(bound);

    CLI::App* figures = app.add_subcommand("figures", "CSV series for the Beta density and score figures");
    figures->add_option("figure", cfg.figure, "betas or scores")->required();
    figures->add_option("--k", k_text, "k values for scores, default 1..5");
    figures->add_option("--out", out_path, "Write the CSV to this file instead of stdout");

    CLI::App* crossings = app.add_subcommand("crossings", "Sign changes of the score difference");
    crossings->add_option("--k", k_text, "k values, default 1..5");
    crossings->add_option("--n-max", cfg.n_max, "Upper end of the scan (<= 1e12)");
    add_common(crossings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::string text;
        if (bf->parsed()) {
            cfg.command = "bf";
        } else if (fisher->parsed()) {
            cfg.command = "fisher";
        } else if (bound->parsed()) {
            cfg.command = "bound";
        } else if (figures->parsed()) {
            cfg.command = "figures";
        } else {
            cfg.command = "crossings";
        }
        if (!table_text.empty()) {
            cfg.table = Table2x2::parse(table_text);
        }
        cfg.prior = parse_prior(prior_text);
        cfg.method = parse_method(method_text);
        cfg.edge_rule = parse_edge_rule(rule_text);
        cfg.format = format_text == "csv" ? Format::csv : Format::json;
        if (cfg.threads < 1) {
            throw std::invalid_argument("--threads must be at least 1");
        }
        if (!(cfg.beta > 0.0)) {
            throw std::invalid_argument("--beta must be positive");
        }
        if (k_text.empty()) {
            k_text = cfg.command == "bf" ? "1" : cfg.command == "bound" ? "0..5" : "1..5";
        }
        cfg.ks = parse_k_list(k_text);
        if (!out_path.empty()) {
            cfg.out = out_path;
        }

        if (cfg.command == "figures") {
            text = cmd_figures(cfg);
        } else {
            json report;
            if (cfg.command == "bf") {
                report = cmd_bf(cfg);
            } else if (cfg.command == "fisher") {
                report = cmd_fisher(cfg);
            } else if (cfg.command == "bound") {
                report = cmd_bound(cfg);
            } else {
                report = cmd_crossings(cfg);
            }
            text = cfg.format == Format::csv ? to_csv(report) : report.dump(2) + "\n";
        }

        if (cfg.out) {
            std::ofstream file(*cfg.out, std::ios::binary);
            if (!file) {
                throw std::invalid_argument("cannot open output file " + *cfg.out);
            }
            file << text;
        } else {
            out << text;
        }
        return 0;
    } catch (const FeasibilityError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace chainbf::cli
