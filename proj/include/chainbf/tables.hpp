#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chainbf {

using Count = std::int64_t;

/// Observed 2x2 contingency table. Row index is the level of X, column index the level of Z.
class Table2x2 {
public:
    Table2x2() = default;
    /// Row-major: u00, u01, u10, u11. Negative counts throw std::invalid_argument.
    Table2x2(Count u00, Count u01, Count u10, Count u11);
    explicit Table2x2(const std::array<Count, 4>& row_major);

    /// Parses "u00,u01,u10,u11" (whitespace tolerated).
    static Table2x2 parse(std::string_view text);

    Count operator()(int i, int j) const { return cells_[static_cast<std::size_t>(2 * i + j)]; }
    Count cell(std::size_t row_major_index) const { return cells_[row_major_index]; }
    const std::array<Count, 4>& cells() const { return cells_; }
    Count total() const { return total_; }

    Count row_sum(int i) const { return (*this)(i, 0) + (*this)(i, 1); }
    Count col_sum(int j) const { return (*this)(0, j) + (*this)(1, j); }

    /// Swaps both rows and both columns.
    Table2x2 flipped() const;
    Table2x2 transposed() const;

    std::string to_string() const;

    friend bool operator==(const Table2x2&, const Table2x2&) = default;

private:
    std::array<Count, 4> cells_{};
    Count total_ = 0;
};

struct Margins {
    std::array<Count, 2> x;  ///< row sums
    std::array<Count, 2> z;  ///< column sums
};

Margins margins(const Table2x2& t);

/// Probability table over the four cells of (X, Z).
class Dist2x2 {
public:
    /// Entries must be >= 0 and sum to one within 1e-12; throws DomainError otherwise.
    explicit Dist2x2(const std::array<double, 4>& row_major);

    double operator()(int i, int j) const { return q_[static_cast<std::size_t>(2 * i + j)]; }
    const std::array<double, 4>& cells() const { return q_; }
    bool strictly_positive() const;

    static Dist2x2 uniform();
    static Dist2x2 product(const std::array<double, 2>& px, const std::array<double, 2>& pz);

private:
    std::array<double, 4> q_{};
};

struct FisherResult {
    double p_two_sided = 1.0;
    /// Conditional MLE of the odds ratio; may be 0 or +inf at the edge of the support.
    /// Empty when a margin is zero.
    std::optional<double> or_conditional_mle;
    /// u00*u11/(u01*u10); +inf when only the denominator vanishes, empty when 0/0 or a margin is zero.
    std::optional<double> or_sample;
    bool degenerate = false;
};

/// Fisher's exact test for a 2x2 table.
///
/// The two-sided p-value sums the central hypergeometric probabilities (conditional on both
/// margins) of every table at most as probable as the observed one, with relative slack 1e-7.
/// The odds ratio is the conditional maximum likelihood estimate under the noncentral
/// hypergeometric, found by bisection on log(psi) over (1e-8, 1e8).
FisherResult fisher_exact(const Table2x2& t);

/// log P(u00 = x) under the central hypergeometric with the margins of t.
double hypergeometric_log_pmf(const Table2x2& t, Count x);

/// Support [lo, hi] of u00 given the margins of t.
std::array<Count, 2> hypergeometric_support(const Table2x2& t);

}  // namespace chainbf
