#include "chainbf/latent_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "chainbf/detail/gauss_jacobi.hpp"
#include "chainbf/errors.hpp"
#include "chainbf/special_fns.hpp"

namespace chainbf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_beta_ratio2(const std::array<double, 2>& alpha, double c0, double c1) {
    return log_beta(alpha[0] + c0, alpha[1] + c1) - log_beta(alpha[0], alpha[1]);
}

// Running log-sum-exp.
class LogSum {
public:
    void add(double x) {
        if (x == kNegInf) {
            return;
        }
        if (x > max_) {
            sum_ = sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        } else {
            sum_ += std::exp(x - max_);
        }
    }
    double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

void require_chain(const ChainHyperParams& h, const char* what) {
    if (h.k < 1 || h.edges.size() != static_cast<std::size_t>(h.k + 1)) {
        throw DomainError(std::string(what) + ": need k >= 1 hidden nodes and k + 1 edges");
    }
}

// Tables shared by the exact routes: per-cell log binomials, the first-edge row factors
// (indexed by the number of level-1 latents in a row) and the last-edge factors (indexed by
// the number of level-1 latents in each column).
struct ExactTables {
    std::array<std::vector<double>, 4> log_binom;
    std::array<std::vector<double>, 2> row_factor;
    std::vector<double> col_factor;  // [s0 * (c1 + 1) + s1]
    Count c1_dim = 1;
    double x_factor = 0.0;
};

ExactTables build_tables(const Table2x2& t, const ChainHyperParams& h) {
    ExactTables tab;
    for (std::size_t c = 0; c < 4; ++c) {
        const Count u = t.cell(c);
        tab.log_binom[c].resize(static_cast<std::size_t>(u + 1));
        for (Count v = 0; v <= u; ++v) {
            tab.log_binom[c][static_cast<std::size_t>(v)] = log_choose(u, v);
        }
    }
    const Margins mg = margins(t);
    const auto& first = h.edges.front();
    for (std::size_t i = 0; i < 2; ++i) {
        const Count r = mg.x[i];
        tab.row_factor[i].resize(static_cast<std::size_t>(r + 1));
        for (Count m = 0; m <= r; ++m) {
            tab.row_factor[i][static_cast<std::size_t>(m)] =
                log_beta_ratio2(first[i], static_cast<double>(r - m), static_cast<double>(m));
        }
    }
    const auto& last = h.edges.back();
    const Count c0 = mg.z[0];
    const Count c1 = mg.z[1];
    tab.c1_dim = c1 + 1;
    tab.col_factor.resize(static_cast<std::size_t>((c0 + 1) * (c1 + 1)));
    for (Count s0 = 0; s0 <= c0; ++s0) {
        for (Count s1 = 0; s1 <= c1; ++s1) {
            tab.col_factor[static_cast<std::size_t>(s0 * (c1 + 1) + s1)] =
                log_beta_ratio2(last[1], static_cast<double>(s0), static_cast<double>(s1)) +
                log_beta_ratio2(last[0], static_cast<double>(c0 - s0), static_cast<double>(c1 - s1));
        }
    }
    tab.x_factor = log_beta_ratio2(h.beta_x, static_cast<double>(mg.x[0]), static_cast<double>(mg.x[1]));
    return tab;
}

// out = in contracted with kernel[w * d + w'] along the axis with extent d.
void mode_product(const std::vector<double>& in, std::vector<double>& out, const std::vector<double>& kernel,
                  std::size_t outer, std::size_t d, std::size_t inner) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t w = 0; w < d; ++w) {
            const double* src = in.data() + (o * d + w) * inner;
            for (std::size_t wp = 0; wp < d; ++wp) {
                const double k = kernel[w * d + wp];
                if (k == 0.0) {
                    continue;
                }
                double* dst = out.data() + (o * d + wp) * inner;
                for (std::size_t i = 0; i < inner; ++i) {
                    dst[i] += k * src[i];
                }
            }
        }
    }
}

// binom[w][a] = C(w, a) theta^a (1 - theta)^(w - a) for 0 <= a <= w <= u.
std::vector<double> binomial_rows(Count u, double theta) {
    const auto d = static_cast<std::size_t>(u + 1);
    std::vector<double> rows(d * d, 0.0);
    const double lt = std::log(theta);
    const double l1t = std::log1p(-theta);
    for (Count w = 0; w <= u; ++w) {
        for (Count a = 0; a <= w; ++a) {
            rows[static_cast<std::size_t>(w) * d + static_cast<std::size_t>(a)] =
                std::exp(log_choose(w, a) + static_cast<double>(a) * lt + static_cast<double>(w - a) * l1t);
        }
    }
    return rows;
}

}  // namespace

double latent_state_count(const Table2x2& t) {
    double n = 1.0;
    for (Count c : t.cells()) {
        n *= static_cast<double>(c + 1);
    }
    return n;
}

double dp_work_estimate(const Table2x2& t, int k) {
    const double states = latent_state_count(t);
    double dim_sum = 0.0;
    double cube_sum = 0.0;
    for (Count c : t.cells()) {
        const auto d = static_cast<double>(c + 1);
        dim_sum += d;
        cube_sum += d * d * d;
    }
    const double nodes = static_cast<double>(t.total() / 2 + 1);
    return 4.0 * states + std::max(0, k - 1) * nodes * nodes * (states * dim_sum + cube_sum);
}

bool enumeration_feasible(const Table2x2& t) { return latent_state_count(t) <= ExactLimits::kMaxEnumerationTerms; }

bool dp_feasible(const Table2x2& t, int k) {
    return k >= 1 && k <= ExactLimits::kMaxDpHidden && latent_state_count(t) <= ExactLimits::kMaxDpStates &&
           dp_work_estimate(t, k) <= ExactLimits::kMaxDpWork;
}

bool LatentSplitState::fits(const Table2x2& t) const {
    for (std::size_t c = 0; c < 4; ++c) {
        if (v[c] < 0 || v[c] > t.cell(c)) {
            return false;
        }
    }
    return true;
}

double log_split_weight(const Table2x2& t, const ChainHyperParams& h, const LatentSplitState& s) {
    if (h.k != 1 || h.edges.size() != 2) {
        throw DomainError("log_split_weight: defined for one hidden node");
    }
    if (!s.fits(t)) {
        throw DomainError("log_split_weight: split counts exceed the table");
    }
    double acc = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        acc += log_choose(t.cell(c), s.v[c]);
    }
    const Margins mg = margins(t);
    acc += log_beta_ratio2(h.beta_x, static_cast<double>(mg.x[0]), static_cast<double>(mg.x[1]));
    for (std::size_t i = 0; i < 2; ++i) {
        const Count ones = s.v[2 * i] + s.v[2 * i + 1];
        acc += log_beta_ratio2(h.edges[0][i], static_cast<double>(mg.x[i] - ones), static_cast<double>(ones));
    }
    // Z given the hidden node: level-1 latents contribute (v_0j + v_1j), level-0 the rest.
    const Count one_z0 = s.v[0] + s.v[2];
    const Count one_z1 = s.v[1] + s.v[3];
    acc += log_beta_ratio2(h.edges[1][1], static_cast<double>(one_z0), static_cast<double>(one_z1));
    acc += log_beta_ratio2(h.edges[1][0], static_cast<double>(mg.z[0] - one_z0),
                           static_cast<double>(mg.z[1] - one_z1));
    return acc;
}

LogMLEstimate log_ml_chain_exact_k1(const Table2x2& t, const ChainHyperParams& h) {
    if (h.k != 1) {
        throw DomainError("log_ml_chain_exact_k1: hyperparameters must describe one hidden node");
    }
    require_chain(h, "log_ml_chain_exact_k1");
    if (!enumeration_feasible(t)) {
        throw FeasibilityError("log_ml_chain_exact_k1: " + std::to_string(latent_state_count(t)) +
                               " latent splits exceed the enumeration limit; use Monte Carlo");
    }
    const ExactTables tab = build_tables(t, h);
    const auto& lb = tab.log_binom;
    LogSum total;
    for (Count v00 = 0; v00 <= t(0, 0); ++v00) {
        for (Count v01 = 0; v01 <= t(0, 1); ++v01) {
            const double row0 = lb[0][static_cast<std::size_t>(v00)] + lb[1][static_cast<std::size_t>(v01)] +
                                tab.row_factor[0][static_cast<std::size_t>(v00 + v01)];
            for (Count v10 = 0; v10 <= t(1, 0); ++v10) {
                for (Count v11 = 0; v11 <= t(1, 1); ++v11) {
                    const double term = row0 + lb[2][static_cast<std::size_t>(v10)] +
                                        lb[3][static_cast<std::size_t>(v11)] +
                                        tab.row_factor[1][static_cast<std::size_t>(v10 + v11)] +
                                        tab.col_factor[static_cast<std::size_t>((v00 + v10) * tab.c1_dim + v01 + v11)];
                    total.add(term);
                }
            }
        }
    }
    return {tab.x_factor + total.value(), Method::enumeration, {}, {}, {}};
}

LogMLEstimate log_ml_chain_exact(const Table2x2& t, const ChainHyperParams& h) {
    require_chain(h, "log_ml_chain_exact");
    if (!dp_feasible(t, h.k)) {
        throw FeasibilityError("log_ml_chain_exact: table with " + std::to_string(latent_state_count(t)) +
                               " latent states and k = " + std::to_string(h.k) +
                               " exceeds the exact recursion limits; use Monte Carlo");
    }
    const ExactTables tab = build_tables(t, h);

    std::array<std::size_t, 4> dims{};
    std::size_t states = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        dims[c] = static_cast<std::size_t>(t.cell(c) + 1);
        states *= dims[c];
    }

    // Layer 1: split each cell among the two levels of Y_1; f is kept scaled so its maximum is
    // one, with the scale carried in log_scale.
    std::vector<double> f(states);
    double log_scale = kNegInf;
    {
        std::size_t idx = 0;
        for (std::size_t w0 = 0; w0 < dims[0]; ++w0) {
            for (std::size_t w1 = 0; w1 < dims[1]; ++w1) {
                for (std::size_t w2 = 0; w2 < dims[2]; ++w2) {
                    for (std::size_t w3 = 0; w3 < dims[3]; ++w3, ++idx) {
                        f[idx] = tab.log_binom[0][w0] + tab.log_binom[1][w1] + tab.log_binom[2][w2] +
                                 tab.log_binom[3][w3] + tab.row_factor[0][w0 + w1] + tab.row_factor[1][w2 + w3];
                        log_scale = std::max(log_scale, f[idx]);
                    }
                }
            }
        }
        for (double& v : f) {
            v = std::exp(v - log_scale);
        }
    }

    // Middle layers Y_l -> Y_{l+1}. The Beta ratio of each parent level depends on the
    // aggregated transition counts only through a Beta moment of degree <= n, which the
    // Gauss rule reproduces exactly; conditional on the nodes the transition factorizes by cell.
    const int nodes = static_cast<int>(t.total() / 2 + 1);
    std::vector<double> acc(states);
    std::vector<double> tmp_a(states);
    std::vector<double> tmp_b(states);
    for (int layer = 1; layer < h.k; ++layer) {
        const EdgeHyper& edge = h.edges[static_cast<std::size_t>(layer)];
        const detail::QuadratureRule from_one = detail::beta_gauss_rule(edge[1][1], edge[1][0], nodes);
        const detail::QuadratureRule from_zero = detail::beta_gauss_rule(edge[0][1], edge[0][0], nodes);

        std::array<std::vector<std::vector<double>>, 4> stay;  // [cell][node] binomial rows
        std::array<std::vector<std::vector<double>>, 4> jump;
        for (std::size_t c = 0; c < 4; ++c) {
            for (int p = 0; p < nodes; ++p) {
                stay[c].push_back(binomial_rows(t.cell(c), from_one.nodes[static_cast<std::size_t>(p)]));
                jump[c].push_back(binomial_rows(t.cell(c), from_zero.nodes[static_cast<std::size_t>(p)]));
            }
        }

        std::fill(acc.begin(), acc.end(), 0.0);
        std::array<std::vector<double>, 4> kernels;
        for (int p = 0; p < nodes; ++p) {
            for (int q = 0; q < nodes; ++q) {
                const double weight =
                    from_one.weights[static_cast<std::size_t>(p)] * from_zero.weights[static_cast<std::size_t>(q)];
                for (std::size_t c = 0; c < 4; ++c) {
                    // kernel[w][w'] = sum_a Bin(a; w, theta1) Bin(w' - a; u - w, theta0)
                    const std::size_t d = dims[c];
                    const auto& b1 = stay[c][static_cast<std::size_t>(p)];
                    const auto& b0 = jump[c][static_cast<std::size_t>(q)];
                    auto& kern = kernels[c];
                    kern.assign(d * d, 0.0);
                    for (std::size_t w = 0; w < d; ++w) {
                        const std::size_t rest = d - 1 - w;
                        for (std::size_t a = 0; a <= w; ++a) {
                            const double pa = b1[w * d + a];
                            for (std::size_t b = 0; b <= rest; ++b) {
                                kern[w * d + a + b] += pa * b0[rest * d + b];
                            }
                        }
                    }
                }
                const std::vector<double>* src = &f;
                std::size_t outer = 1;
                std::size_t inner = states;
                for (std::size_t c = 0; c < 4; ++c) {
                    inner /= dims[c];
                    std::vector<double>& dst = (c % 2 == 0) ? tmp_a : tmp_b;
                    mode_product(*src, dst, kernels[c], outer, dims[c], inner);
                    src = &dst;
                    outer *= dims[c];
                }
                for (std::size_t s = 0; s < states; ++s) {
                    acc[s] += weight * (*src)[s];
                }
            }
        }
        const double top = *std::max_element(acc.begin(), acc.end());
        if (!(top > 0.0)) {
            throw FeasibilityError("log_ml_chain_exact: layer underflow");
        }
        for (std::size_t s = 0; s < states; ++s) {
            f[s] = acc[s] / top;
        }
        log_scale += std::log(top);
    }

    // Last edge Y_k -> Z.
    LogSum total;
    std::size_t idx = 0;
    for (std::size_t w0 = 0; w0 < dims[0]; ++w0) {
        for (std::size_t w1 = 0; w1 < dims[1]; ++w1) {
            for (std::size_t w2 = 0; w2 < dims[2]; ++w2) {
                for (std::size_t w3 = 0; w3 < dims[3]; ++w3, ++idx) {
                    if (f[idx] > 0.0) {
                        const auto col = static_cast<std::size_t>((w0 + w2) * static_cast<std::size_t>(tab.c1_dim) + w1 + w3);
                        total.add(std::log(f[idx]) + tab.col_factor[col]);
                    }
                }
            }
        }
    }
    return {tab.x_factor + log_scale + total.value(), Method::dp, {}, {}, {}};
}

LogMLEstimate log_ml_chain_mc(const Table2x2& t, const ChainHyperParams& h, const MonteCarloOptions& opts) {
    require_chain(h, "log_ml_chain_mc");
    if (opts.n_samples < 1000) {
        throw DomainError("log_ml_chain_mc: need at least 1000 samples");
    }
    if (opts.batches < 2 || static_cast<std::uint64_t>(opts.batches) > opts.n_samples) {
        throw DomainError("log_ml_chain_mc: batch count must lie in [2, n_samples]");
    }
    if (opts.threads < 1) {
        throw DomainError("log_ml_chain_mc: need at least one thread");
    }
    const auto batches = static_cast<std::size_t>(opts.batches);
    std::vector<double> batch_log_mean(batches, kNegInf);
    std::vector<std::uint64_t> batch_size(batches, opts.n_samples / batches);
    for (std::size_t b = 0; b < opts.n_samples % batches; ++b) {
        ++batch_size[b];
    }

    auto run_batch = [&](std::size_t b) {
        Rng rng = Rng::substream(opts.seed, b);
        LogSum acc;
        for (std::uint64_t s = 0; s < batch_size[b]; ++s) {
            const ChainParams theta = sample_chain_params(h, rng);
            const auto q = chain_xz_distribution(theta);
            double ll = 0.0;
            for (std::size_t c = 0; c < 4; ++c) {
                if (t.cell(c) > 0) {
                    ll += static_cast<double>(t.cell(c)) * std::log(q[c]);
                }
            }
            acc.add(ll);
        }
        batch_log_mean[b] = acc.value() - std::log(static_cast<double>(batch_size[b]));
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(opts.threads), batches);
    if (workers == 1) {
        for (std::size_t b = 0; b < batches; ++b) {
            run_batch(b);
        }
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < batches; b += workers) {
                    run_batch(b);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    LogSum total;
    for (std::size_t b = 0; b < batches; ++b) {
        total.add(batch_log_mean[b] + std::log(static_cast<double>(batch_size[b])));
    }
    const double log_value = total.value() - std::log(static_cast<double>(opts.n_samples));

    const double top = *std::max_element(batch_log_mean.begin(), batch_log_mean.end());
    double mean = 0.0;
    std::vector<double> scaled(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        scaled[b] = std::exp(batch_log_mean[b] - top);
        mean += scaled[b];
    }
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double s : scaled) {
        var += (s - mean) * (s - mean);
    }
    var /= static_cast<double>(batches - 1);
    const double se = std::sqrt(var / static_cast<double>(batches)) / mean;

    return {log_value, Method::monte_carlo, se, opts.n_samples, opts.seed};
}

BayesFactor bf_k(const Table2x2& t, const JointPrior& p, ChainMethod method, const MonteCarloOptions& mc,
                 EdgeRule rule) {
    BayesFactor out;
    out.k = p.k();
    const auto ind = independence_hyperparams(p);
    out.denominator = log_ml_independence(t, ind.beta_x, ind.beta_z);
    if (p.k() == 0) {
        out.numerator = log_ml_saturated(t, saturated_hyperparams(p));
    } else {
        const ChainHyperParams h = chain_hyperparams(p, rule);
        switch (method) {
            case ChainMethod::automatic:
                if (p.k() == 1 && enumeration_feasible(t)) {
                    out.numerator = log_ml_chain_exact_k1(t, h);
                } else if (dp_feasible(t, p.k())) {
                    out.numerator = log_ml_chain_exact(t, h);
                } else {
                    out.numerator = log_ml_chain_mc(t, h, mc);
                }
                break;
            case ChainMethod::enumeration:
                if (p.k() != 1) {
                    throw DomainError("bf_k: enumeration is defined for k = 1 only");
                }
                out.numerator = log_ml_chain_exact_k1(t, h);
                break;
            case ChainMethod::dp:
                out.numerator = log_ml_chain_exact(t, h);
                break;
            case ChainMethod::monte_carlo:
                out.numerator = log_ml_chain_mc(t, h, mc);
                break;
        }
    }
    out.log_value = out.numerator.log_value - out.denominator.log_value;
    out.value = std::exp(out.log_value);
    return out;
}

JensenBound jensen_bound(const Table2x2& t, int k) {
    if (k < 0) {
        throw DomainError("jensen_bound: k must be non-negative");
    }
    const Margins mg = margins(t);
    JensenBound jb;
    jb.k = k;
    jb.log_c_of_u = std::log(6.0) +
                    log_beta(static_cast<double>(mg.x[0]) + 2.0, static_cast<double>(mg.x[1]) + 2.0) +
                    log_beta(static_cast<double>(mg.z[0]) + 1.0, static_cast<double>(mg.z[1]) + 1.0);
    jb.c_of_u = std::exp(jb.log_c_of_u);
    jb.log_bound = jb.log_c_of_u + std::log(5.0 / 9.0) + static_cast<double>(k) * std::log(0.4);
    jb.bound = std::exp(jb.log_bound);
    return jb;
}

}  // namespace chainbf
