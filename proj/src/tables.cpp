#include "chainbf/tables.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "chainbf/errors.hpp"
#include "chainbf/special_fns.hpp"

namespace chainbf {

Table2x2::Table2x2(Count u00, Count u01, Count u10, Count u11) : Table2x2(std::array<Count, 4>{u00, u01, u10, u11}) {}

Table2x2::Table2x2(const std::array<Count, 4>& row_major) : cells_(row_major) {
    for (Count c : cells_) {
        if (c < 0) {
            throw std::invalid_argument("table counts must be non-negative");
        }
    }
    total_ = cells_[0] + cells_[1] + cells_[2] + cells_[3];
}

Table2x2 Table2x2::parse(std::string_view text) {
    std::array<Count, 4> cells{};
    std::size_t found = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view field = text.substr(pos, comma - pos);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
        if (found == 4) {
            throw std::invalid_argument("table must have exactly four comma-separated counts");
        }
        Count value = 0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
            throw std::invalid_argument("table entry '" + std::string(field) + "' is not an integer");
        }
        cells[found++] = value;
        pos = comma + 1;
    }
    if (found != 4) {
        throw std::invalid_argument("table must have exactly four comma-separated counts");
    }
    return Table2x2(cells);
}

Table2x2 Table2x2::flipped() const { return {cells_[3], cells_[2], cells_[1], cells_[0]}; }

Table2x2 Table2x2::transposed() const { return {cells_[0], cells_[2], cells_[1], cells_[3]}; }

std::string Table2x2::to_string() const {
    std::ostringstream out;
    out << cells_[0] << ',' << cells_[1] << ',' << cells_[2] << ',' << cells_[3];
    return out.str();
}

Margins margins(const Table2x2& t) {
    return {{t.row_sum(0), t.row_sum(1)}, {t.col_sum(0), t.col_sum(1)}};
}

Dist2x2::Dist2x2(const std::array<double, 4>& row_major) : q_(row_major) {
    double sum = 0.0;
    for (double q : q_) {
        if (!(q >= 0.0) || !std::isfinite(q)) {
            throw DomainError("distribution entries must be finite and non-negative");
        }
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("distribution entries must sum to one");
    }
}

bool Dist2x2::strictly_positive() const {
    return std::all_of(q_.begin(), q_.end(), [](double q) { return q > 0.0; });
}

Dist2x2 Dist2x2::uniform() { return Dist2x2({0.25, 0.25, 0.25, 0.25}); }

Dist2x2 Dist2x2::product(const std::array<double, 2>& px, const std::array<double, 2>& pz) {
    return Dist2x2({px[0] * pz[0], px[0] * pz[1], px[1] * pz[0], px[1] * pz[1]});
}

std::array<Count, 2> hypergeometric_support(const Table2x2& t) {
    const Count r0 = t.row_sum(0);
    const Count c0 = t.col_sum(0);
    return {std::max<Count>(0, r0 + c0 - t.total()), std::min(r0, c0)};
}

double hypergeometric_log_pmf(const Table2x2& t, Count x) {
    const auto [lo, hi] = hypergeometric_support(t);
    if (x < lo || x > hi) {
        return -std::numeric_limits<double>::infinity();
    }
    const Count r0 = t.row_sum(0);
    const Count r1 = t.row_sum(1);
    const Count c0 = t.col_sum(0);
    return log_choose(r0, x) + log_choose(r1, c0 - x) - log_choose(t.total(), c0);
}

namespace {

// E[u00] under the noncentral hypergeometric with odds ratio exp(log_psi).
double noncentral_mean(const std::vector<double>& log_pmf, Count lo, double log_psi) {
    double max_term = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < log_pmf.size(); ++s) {
        max_term = std::max(max_term, log_pmf[s] + static_cast<double>(lo + static_cast<Count>(s)) * log_psi);
    }
    double norm = 0.0;
    double mean = 0.0;
    for (std::size_t s = 0; s < log_pmf.size(); ++s) {
        const double x = static_cast<double>(lo + static_cast<Count>(s));
        const double w = std::exp(log_pmf[s] + x * log_psi - max_term);
        norm += w;
        mean += w * x;
    }
    return mean / norm;
}

}  // namespace

FisherResult fisher_exact(const Table2x2& t) {
    FisherResult result;
    const Margins m = margins(t);
    if (m.x[0] == 0 || m.x[1] == 0 || m.z[0] == 0 || m.z[1] == 0) {
        result.degenerate = true;
        return result;
    }

    const auto [lo, hi] = hypergeometric_support(t);
    std::vector<double> log_pmf;
    log_pmf.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (Count x = lo; x <= hi; ++x) {
        log_pmf.push_back(hypergeometric_log_pmf(t, x));
    }

    const Count observed = t(0, 0);
    const double cutoff = log_pmf[static_cast<std::size_t>(observed - lo)] + std::log1p(1e-7);
    double p = 0.0;
    for (double lp : log_pmf) {
        if (lp <= cutoff) {
            p += std::exp(lp);
        }
    }
    result.p_two_sided = std::min(1.0, p);

    if (lo == hi) {
        result.degenerate = true;
    } else if (observed == lo) {
        result.or_conditional_mle = 0.0;
    } else if (observed == hi) {
        result.or_conditional_mle = std::numeric_limits<double>::infinity();
    } else {
        // The noncentral mean is increasing in psi, so bisection on log(psi) is safe.
        double a = std::log(1e-8);
        double b = std::log(1e8);
        const auto target = static_cast<double>(observed);
        for (int iter = 0; iter < 200 && b - a > 1e-13; ++iter) {
            const double mid = 0.5 * (a + b);
            if (noncentral_mean(log_pmf, lo, mid) < target) {
                a = mid;
            } else {
                b = mid;
            }
        }
        result.or_conditional_mle = std::exp(0.5 * (a + b));
    }

    const auto num = static_cast<double>(t(0, 0)) * static_cast<double>(t(1, 1));
    const auto den = static_cast<double>(t(0, 1)) * static_cast<double>(t(1, 0));
    if (den > 0.0) {
        result.or_sample = num / den;
    } else if (num > 0.0) {
        result.or_sample = std::numeric_limits<double>::infinity();
    }
    return result;
}

}  // namespace chainbf
