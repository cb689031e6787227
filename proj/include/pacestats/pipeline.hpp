#ifndef PACESTATS_PIPELINE_HPP
#define PACESTATS_PIPELINE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypothesis.hpp"
#include "posthoc.hpp"

namespace pacestats {

enum class VarianceBranch { Homogeneous, Heterogeneous };

inline std::string_view to_string(VarianceBranch branch) {
    return branch == VarianceBranch::Homogeneous ? "homogeneous" : "heterogeneous";
}

/// Complete outcome of the adaptive inference procedure for one variable.
/// The spread test is absent when the branch was asserted externally
/// (summary mode). The decomposition exists only on the homogeneous
/// branch, and the post hoc table only when the omnibus was significant
/// at alpha (or forced). The post hoc procedure is tied to the branch:
/// shared-variance comparisons on homogeneous, per-pair on heterogeneous.
struct AnalysisReport {
    std::string dependent_variable;
    std::vector<GroupSummary> group_summaries;
    std::optional<OmnibusResult> levene;
    bool levene_asserted = false;
    VarianceBranch branch = VarianceBranch::Homogeneous;
    OmnibusResult omnibus;
    std::optional<AnovaDecomposition> decomposition;
    std::optional<std::vector<PairwiseComparison>> posthoc;
    double alpha = 0.05;
};

namespace detail {

template <class Fn>
auto pipeline_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const DegenerateDataError& e) {
        throw DegenerateDataError(std::string(stage) + ": " + e.what());
    } catch (const InsufficientDataError& e) {
        throw InsufficientDataError(std::string(stage) + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(std::string(stage) + ": " + e.what());
    }
}

inline void finish_pipeline(AnalysisReport& report, std::optional<double> ms_within_hint,
                            bool force_posthoc) {
    const std::span<const GroupSummary> summaries(report.group_summaries);
    if (report.branch == VarianceBranch::Homogeneous) {
        const AnovaResult res =
            pipeline_stage("anova", [&] { return oneway_anova(summaries); });
        report.omnibus = res.omnibus;
        report.decomposition = res.decomposition;
        if ((report.omnibus.p < report.alpha || force_posthoc) && !report.omnibus.degenerate) {
            const double msw = ms_within_hint.value_or(res.decomposition.ms_within);
            report.posthoc = pipeline_stage("tukey-kramer", [&] {
                return tukey_kramer(summaries, msw, res.decomposition.df_within, report.alpha);
            });
        }
    } else {
        report.omnibus = pipeline_stage("welch", [&] { return welch_anova(summaries); });
        if (report.omnibus.p < report.alpha || force_posthoc) {
            report.posthoc = pipeline_stage(
                "games-howell", [&] { return games_howell(summaries, report.alpha); });
        }
    }
}

} // namespace detail

/// Run the adaptive procedure on raw groups: spread test chooses the
/// branch, the branch chooses omnibus and post hoc procedures, and the
/// post hoc stage runs only if the omnibus is significant (or forced).
/// Errors from constituent tests carry the stage name.
inline AnalysisReport run_pipeline(std::span<const RawGroup> groups, double alpha = 0.05,
                                   bool force_posthoc = false, std::string variable_name = "") {
    detail::validate_alpha(alpha);
    AnalysisReport report;
    report.dependent_variable = std::move(variable_name);
    report.alpha = alpha;
    report.group_summaries = detail::pipeline_stage("summarize", [&] {
        std::vector<GroupSummary> summaries;
        summaries.reserve(groups.size());
        for (const RawGroup& g : groups) summaries.push_back(summarize(g.values, g.label));
        return summaries;
    });
    report.levene = detail::pipeline_stage("levene", [&] { return levene_test(groups); });
    report.branch = report.levene->p < alpha ? VarianceBranch::Heterogeneous
                                             : VarianceBranch::Homogeneous;
    detail::finish_pipeline(report, std::nullopt, force_posthoc);
    return report;
}

/// Same procedure driven by published group summaries. The spread test
/// cannot be computed from summaries, so the caller asserts the branch;
/// an external mean-square-within may replace the derived one in the
/// shared-variance post hoc stage.
inline AnalysisReport run_pipeline_from_summaries(std::span<const GroupSummary> summaries,
                                                  VarianceBranch branch_override,
                                                  std::optional<double> ms_within_hint = {},
                                                  double alpha = 0.05, bool force_posthoc = false,
                                                  std::string variable_name = "") {
    detail::validate_alpha(alpha);
    if (ms_within_hint && !(*ms_within_hint > 0.0))
        throw DomainError("ms_within hint must be positive");
    AnalysisReport report;
    report.dependent_variable = std::move(variable_name);
    report.alpha = alpha;
    report.group_summaries.assign(summaries.begin(), summaries.end());
    report.levene = std::nullopt;
    report.levene_asserted = true;
    report.branch = branch_override;
    detail::finish_pipeline(report, ms_within_hint, force_posthoc);
    return report;
}

} // namespace pacestats

#endif
