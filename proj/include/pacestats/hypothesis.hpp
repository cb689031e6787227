#ifndef PACESTATS_HYPOTHESIS_HPP
#define PACESTATS_HYPOTHESIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"

namespace pacestats {

/// Moment summary of one group: sample size, mean and unbiased variance.
struct GroupSummary {
    std::string label;
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;

    [[nodiscard]] double sd() const { return std::sqrt(variance); }
};

/// A labelled group of raw observations.
struct RawGroup {
    std::string label;
    std::vector<double> values;
};

enum class TestKind { Levene, Anova, Welch };

inline std::string_view to_string(TestKind kind) {
    switch (kind) {
        case TestKind::Levene: return "levene";
        case TestKind::Anova: return "anova";
        case TestKind::Welch: return "welch";
    }
    return "unknown";
}

/// Outcome of an omnibus test. `degenerate` marks the zero-denominator
/// case where the statistic is reported as infinite with p = 0.
struct OmnibusResult {
    TestKind kind = TestKind::Anova;
    double statistic = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p = 1.0;
    bool degenerate = false;
};

/// Sum-of-squares decomposition of a one-way layout.
struct AnovaDecomposition {
    double ss_between = 0.0;
    double ss_within = 0.0;
    double ss_total = 0.0;
    double ms_between = 0.0;
    double ms_within = 0.0;
    double df_between = 0.0;
    double df_within = 0.0;
};

struct AnovaResult {
    OmnibusResult omnibus;
    AnovaDecomposition decomposition;
};

/// Centering statistic for the spread test.
enum class Centering { Mean, Median };

struct TwoSampleResult {
    double statistic = 0.0;
    double df = 0.0;
    double p = 1.0;
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

inline void validate_summaries(std::span<const GroupSummary> groups, const char* who) {
    if (groups.size() < 2)
        throw InsufficientDataError(std::string(who) + " requires at least 2 groups");
    for (const GroupSummary& g : groups) {
        if (g.n < 2)
            throw InsufficientDataError(std::string(who) +
                                        " requires at least 2 observations per group");
        require_finite(g.mean, "group mean");
        require_finite(g.variance, "group variance");
        if (g.variance < 0.0) throw DomainError("group variance must be nonnegative");
    }
}

inline double group_median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace detail

/// Compute the moment summary of one group of raw observations.
inline GroupSummary summarize(std::span<const double> values, std::string label = "") {
    if (values.size() < 2)
        throw InsufficientDataError("summary requires at least 2 observations");
    double sum = 0.0;
    for (double v : values) {
        detail::require_finite(v, "observation");
        sum += v;
    }
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return GroupSummary{std::move(label), values.size(), mean,
                        ss / static_cast<double>(values.size() - 1)};
}

/// One-way fixed-effects analysis of variance from group summaries.
/// Zero within-group spread with separated means is reported as a
/// degenerate result (infinite statistic, p = 0) rather than an error;
/// zero spread everywhere is an error.
inline AnovaResult oneway_anova(std::span<const GroupSummary> groups) {
    detail::validate_summaries(groups, "one-way anova");
    const double k = static_cast<double>(groups.size());
    double n_total = 0.0;
    double weighted_sum = 0.0;
    for (const GroupSummary& g : groups) {
        n_total += static_cast<double>(g.n);
        weighted_sum += static_cast<double>(g.n) * g.mean;
    }
    const double grand_mean = weighted_sum / n_total;

    AnovaDecomposition dec;
    for (const GroupSummary& g : groups) {
        const double nd = static_cast<double>(g.n);
        dec.ss_between += nd * (g.mean - grand_mean) * (g.mean - grand_mean);
        dec.ss_within += (nd - 1.0) * g.variance;
    }
    dec.ss_total = dec.ss_between + dec.ss_within;
    dec.df_between = k - 1.0;
    dec.df_within = n_total - k;
    dec.ms_between = dec.ss_between / dec.df_between;
    dec.ms_within = dec.ss_within / dec.df_within;

    OmnibusResult result;
    result.kind = TestKind::Anova;
    result.df1 = dec.df_between;
    result.df2 = dec.df_within;
    if (dec.ss_within == 0.0) {
        if (dec.ss_between == 0.0)
            throw DegenerateDataError("one-way anova: all observations are identical");
        result.statistic = std::numeric_limits<double>::infinity();
        result.p = 0.0;
        result.degenerate = true;
    } else {
        result.statistic = dec.ms_between / dec.ms_within;
        result.p = f_survival(result.statistic, result.df1, result.df2);
    }
    return AnovaResult{result, dec};
}

/// Welch's heteroscedastic one-way test from group summaries.
inline OmnibusResult welch_anova(std::span<const GroupSummary> groups) {
    detail::validate_summaries(groups, "welch anova");
    const double k = static_cast<double>(groups.size());
    for (const GroupSummary& g : groups) {
        if (g.variance <= 0.0)
            throw DegenerateDataError("welch anova requires positive within-group variance");
    }
    double weight_sum = 0.0;
    double weighted_mean = 0.0;
    for (const GroupSummary& g : groups) {
        const double w = static_cast<double>(g.n) / g.variance;
        weight_sum += w;
        weighted_mean += w * g.mean;
    }
    weighted_mean /= weight_sum;

    double a = 0.0;
    double s = 0.0;
    for (const GroupSummary& g : groups) {
        const double w = static_cast<double>(g.n) / g.variance;
        a += w * (g.mean - weighted_mean) * (g.mean - weighted_mean);
        const double rel = 1.0 - w / weight_sum;
        s += rel * rel / (static_cast<double>(g.n) - 1.0);
    }
    a /= k - 1.0;
    const double b = 1.0 + 2.0 * (k - 2.0) / (k * k - 1.0) * s;

    OmnibusResult result;
    result.kind = TestKind::Welch;
    result.statistic = a / b;
    result.df1 = k - 1.0;
    result.df2 = (k * k - 1.0) / (3.0 * s);
    result.p = f_survival(result.statistic, result.df1, result.df2);
    return result;
}

/// Spread homogeneity test on absolute deviations from the group center
/// (mean by default, median for the robust variant). All groups constant
/// yields W = 0 with p = 1.
inline OmnibusResult levene_test(std::span<const RawGroup> groups,
                                 Centering centering = Centering::Mean) {
    if (groups.size() < 2)
        throw InsufficientDataError("levene test requires at least 2 groups");
    for (const RawGroup& g : groups) {
        if (g.values.size() < 2)
            throw InsufficientDataError("levene test requires at least 2 observations per group");
        for (double v : g.values) detail::require_finite(v, "observation");
    }

    const double k = static_cast<double>(groups.size());
    double n_total = 0.0;
    std::vector<std::vector<double>> deviations;
    deviations.reserve(groups.size());
    for (const RawGroup& g : groups) {
        double center;
        if (centering == Centering::Mean) {
            center = 0.0;
            for (double v : g.values) center += v;
            center /= static_cast<double>(g.values.size());
        } else {
            center = detail::group_median(g.values);
        }
        std::vector<double> z;
        z.reserve(g.values.size());
        for (double v : g.values) z.push_back(std::fabs(v - center));
        deviations.push_back(std::move(z));
        n_total += static_cast<double>(g.values.size());
    }

    double grand = 0.0;
    std::vector<double> group_means;
    group_means.reserve(deviations.size());
    for (const std::vector<double>& z : deviations) {
        double m = 0.0;
        for (double v : z) m += v;
        m /= static_cast<double>(z.size());
        group_means.push_back(m);
        grand += m * static_cast<double>(z.size());
    }
    grand /= n_total;

    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < deviations.size(); ++i) {
        const double nd = static_cast<double>(deviations[i].size());
        numerator += nd * (group_means[i] - grand) * (group_means[i] - grand);
        for (double v : deviations[i])
            denominator += (v - group_means[i]) * (v - group_means[i]);
    }

    OmnibusResult result;
    result.kind = TestKind::Levene;
    result.df1 = k - 1.0;
    result.df2 = n_total - k;
    if (denominator == 0.0) {
        if (numerator != 0.0)
            throw DegenerateDataError(
                "levene test: zero within-group spread of absolute deviations");
        result.statistic = 0.0;
        result.p = 1.0;
        return result;
    }
    result.statistic = (n_total - k) / (k - 1.0) * numerator / denominator;
    result.p = f_survival(result.statistic, result.df1, result.df2);
    return result;
}

/// Two-sample t test with pooled variance.
inline TwoSampleResult pooled_t_test(const GroupSummary& a, const GroupSummary& b) {
    const GroupSummary pair[] = {a, b};
    detail::validate_summaries(pair, "pooled t test");
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double df = na + nb - 2.0;
    const double pooled = ((na - 1.0) * a.variance + (nb - 1.0) * b.variance) / df;
    const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    if (se == 0.0) throw DegenerateDataError("pooled t test requires positive variance");
    const double t = (a.mean - b.mean) / se;
    return TwoSampleResult{t, df, 2.0 * (1.0 - student_t_cdf(std::fabs(t), df))};
}

/// Two-sample t test with unequal variances and Welch-Satterthwaite
/// degrees of freedom.
inline TwoSampleResult welch_t_test(const GroupSummary& a, const GroupSummary& b) {
    const GroupSummary pair[] = {a, b};
    detail::validate_summaries(pair, "welch t test");
    if (a.variance <= 0.0 || b.variance <= 0.0)
        throw DegenerateDataError("welch t test requires positive variance");
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double va = a.variance / na;
    const double vb = b.variance / nb;
    const double se = std::sqrt(va + vb);
    const double t = (a.mean - b.mean) / se;
    const double df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    return TwoSampleResult{t, df, 2.0 * (1.0 - student_t_cdf(std::fabs(t), df))};
}

} // namespace pacestats

#endif
