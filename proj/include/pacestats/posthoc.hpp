#ifndef PACESTATS_POSTHOC_HPP
#define PACESTATS_POSTHOC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"
#include "hypothesis.hpp"

namespace pacestats {

/// One row of a pairwise multiple-comparison table. Rows come in mirrored
/// pairs: (i, j) and (j, i) carry negated differences and reflected
/// confidence bounds but identical std_error, df, p and significance.
struct PairwiseComparison {
    std::string group_i;
    std::string group_j;
    double mean_difference = 0.0;
    double std_error = 0.0;
    double df = 0.0;
    double p = 1.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    bool significant = false;
};

namespace detail {

inline void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

// Expand the upper triangle of comparisons into the full ordered matrix,
// keeping rows grouped by the first index in declaration order.
inline std::vector<PairwiseComparison> mirror_pairs(
    std::span<const GroupSummary> groups, const std::vector<PairwiseComparison>& upper) {
    const std::size_t k = groups.size();
    std::vector<PairwiseComparison> rows;
    rows.reserve(k * (k - 1));
    auto find_upper = [&](std::size_t i, std::size_t j) -> const PairwiseComparison& {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (a == i && b == j) return upper[idx];
                ++idx;
            }
        }
        throw DomainError("pair index out of range");
    };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (i < j) {
                rows.push_back(find_upper(i, j));
            } else {
                PairwiseComparison row = find_upper(j, i);
                std::swap(row.group_i, row.group_j);
                row.mean_difference = -row.mean_difference;
                const double lo = row.ci_lower;
                row.ci_lower = -row.ci_upper;
                row.ci_upper = -lo;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace detail

/// Tukey-Kramer pairwise comparisons against a shared error variance.
/// `ms_within` and `df_within` normally come from the one-way anova of the
/// same groups but may be supplied externally. Returns all k(k-1) ordered
/// rows in group declaration order.
inline std::vector<PairwiseComparison> tukey_kramer(std::span<const GroupSummary> groups,
                                                    double ms_within, double df_within,
                                                    double alpha = 0.05) {
    detail::validate_summaries(groups, "tukey-kramer");
    detail::validate_alpha(alpha);
    if (!(ms_within > 0.0)) throw DomainError("tukey-kramer requires ms_within > 0");
    if (!(df_within > 0.0)) throw DomainError("tukey-kramer requires df_within > 0");

    const int k = static_cast<int>(groups.size());
    const double sqrt2 = std::sqrt(2.0);
    const double q_crit = studentized_range_quantile(1.0 - alpha, k, df_within);

    std::vector<PairwiseComparison> upper;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const GroupSummary& a = groups[i];
            const GroupSummary& b = groups[j];
            PairwiseComparison row;
            row.group_i = a.label;
            row.group_j = b.label;
            row.mean_difference = a.mean - b.mean;
            row.std_error = std::sqrt(ms_within * (1.0 / static_cast<double>(a.n) +
                                                   1.0 / static_cast<double>(b.n)));
            row.df = df_within;
            const double q = sqrt2 * std::fabs(row.mean_difference) / row.std_error;
            row.p = 1.0 - studentized_range_cdf(q, k, df_within);
            const double half_width = q_crit * row.std_error / sqrt2;
            row.ci_lower = row.mean_difference - half_width;
            row.ci_upper = row.mean_difference + half_width;
            row.significant = row.p < alpha;
            upper.push_back(std::move(row));
        }
    }
    return detail::mirror_pairs(groups, upper);
}

/// Games-Howell pairwise comparisons with per-pair standard errors and
/// Welch-Satterthwaite degrees of freedom; for heteroscedastic groups.
/// Returns all k(k-1) ordered rows in group declaration order.
inline std::vector<PairwiseComparison> games_howell(std::span<const GroupSummary> groups,
                                                    double alpha = 0.05) {
    detail::validate_summaries(groups, "games-howell");
    detail::validate_alpha(alpha);
    for (const GroupSummary& g : groups) {
        if (g.variance <= 0.0)
            throw DegenerateDataError("games-howell requires positive within-group variance");
    }

    const int k = static_cast<int>(groups.size());
    const double sqrt2 = std::sqrt(2.0);

    std::vector<PairwiseComparison> upper;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const GroupSummary& a = groups[i];
            const GroupSummary& b = groups[j];
            const double na = static_cast<double>(a.n);
            const double nb = static_cast<double>(b.n);
            const double va = a.variance / na;
            const double vb = b.variance / nb;
            PairwiseComparison row;
            row.group_i = a.label;
            row.group_j = b.label;
            row.mean_difference = a.mean - b.mean;
            row.std_error = std::sqrt(va + vb);
            row.df = (va + vb) * (va + vb) /
                     (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
            const double q = sqrt2 * std::fabs(row.mean_difference) / row.std_error;
            row.p = 1.0 - studentized_range_cdf(q, k, row.df);
            const double q_crit = studentized_range_quantile(1.0 - alpha, k, row.df);
            const double half_width = q_crit * row.std_error / sqrt2;
            row.ci_lower = row.mean_difference - half_width;
            row.ci_upper = row.mean_difference + half_width;
            row.significant = row.p < alpha;
            upper.push_back(std::move(row));
        }
    }
    return detail::mirror_pairs(groups, upper);
}

} // namespace pacestats

#endif
