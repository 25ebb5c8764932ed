#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainbf/chainbf.hpp"

namespace py = pybind11;
using namespace chainbf;

namespace {

Table2x2 to_table(const std::array<Count, 4>& cells) { return Table2x2(cells); }

JointPrior make_prior(int k, const std::string& prior, double beta, double t) {
    if (prior == "uniform") return uniform_prior(k, beta);
    if (prior == "t") {
        if (k != 1) throw std::invalid_argument("the t prior is defined for k = 1 only");
        return t_prior(t, beta);
    }
    throw std::invalid_argument("prior must be 'uniform' or 't'");
}

ChainMethod to_method(const std::string& m) {
    if (m == "auto") return ChainMethod::automatic;
    if (m == "enumeration") return ChainMethod::enumeration;
    if (m == "dp") return ChainMethod::dp;
    if (m == "monte_carlo") return ChainMethod::monte_carlo;
    throw std::invalid_argument("method must be auto, enumeration, dp or monte_carlo");
}

py::dict estimate_dict(const LogMLEstimate& e) {
    py::dict d;
    d["log_value"] = e.log_value;
    d["method"] = std::string(to_string(e.method));
    d["se"] = e.se ? py::cast(*e.se) : py::none();
    d["n_samples"] = e.n_samples ? py::cast(*e.n_samples) : py::none();
    d["seed"] = e.seed ? py::cast(*e.seed) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bayes factors for 2x2 tables under hidden-chain embeddings";
    m.attr("__version__") = kVersion;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<FeasibilityError>(m, "FeasibilityError", PyExc_RuntimeError);

    m.def("log_gamma", &log_gamma, py::arg("x"));

    m.def(
        "bf0",
        [](const std::array<Count, 4>& table, const std::string& prior, double beta, double t) {
            return bf0(to_table(table), make_prior(1, prior, beta, t));
        },
        py::arg("table"), py::arg("prior") = "uniform", py::arg("beta") = 4.0, py::arg("t") = 0.5,
        "BF_0 of the saturated model against independence. It does not depend on t.");

    m.def(
        "bf_k",
        [](const std::array<Count, 4>& table, int k, const std::string& prior, double beta, double t,
           const std::string& method, std::uint64_t n_samples, std::uint64_t seed, int threads) {
            MonteCarloOptions mc;
            mc.n_samples = n_samples;
            mc.seed = seed;
            mc.threads = threads;
            BayesFactor bf;
            {
                py::gil_scoped_release release;
                bf = bf_k(to_table(table), make_prior(k, prior, beta, t), to_method(method), mc);
            }
            py::dict d;
            d["k"] = bf.k;
            d["value"] = bf.value;
            d["log_value"] = bf.log_value;
            d["numerator"] = estimate_dict(bf.numerator);
            d["denominator"] = estimate_dict(bf.denominator);
            return d;
        },
        py::arg("table"), py::arg("k") = 1, py::arg("prior") = "uniform", py::arg("beta") = 4.0,
        py::arg("t") = 0.5, py::arg("method") = "auto", py::arg("n_samples") = 1'000'000, py::arg("seed") = 0,
        py::arg("threads") = 1);

    m.def(
        "fisher_exact",
        [](const std::array<Count, 4>& table) {
            const FisherResult r = fisher_exact(to_table(table));
            py::dict d;
            d["p_two_sided"] = r.p_two_sided;
            d["or_conditional_mle"] = r.or_conditional_mle ? py::cast(*r.or_conditional_mle) : py::none();
            d["or_sample"] = r.or_sample ? py::cast(*r.or_sample) : py::none();
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("table"));

    m.def(
        "jensen_bound",
        [](const std::array<Count, 4>& table, int k) {
            const JensenBound b = jensen_bound(to_table(table), k);
            py::dict d;
            d["k"] = b.k;
            d["c_of_u"] = b.c_of_u;
            d["log_bound"] = b.log_bound;
            d["bound"] = b.bound;
            return d;
        },
        py::arg("table"), py::arg("k"));

    m.def("score_difference", &score_difference, py::arg("n"), py::arg("k"));
    m.def("crossing_points", &crossing_points, py::arg("k"), py::arg("n_max") = 1e12);
}
