#ifndef PACESTATS_PUBLISHED_HPP
#define PACESTATS_PUBLISHED_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cricket.hpp"
#include "pipeline.hpp"

namespace pacestats {

/// One upper-triangle row of a pairwise comparison table as printed in
/// the source study.
struct PublishedPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double difference = 0.0;
    double std_error = 0.0;
    double p = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    bool significant = false;
};

/// Printed omnibus cells (Welch or classic anova headline row).
struct PublishedOmnibus {
    TestKind kind = TestKind::Anova;
    double statistic = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p = 0.0;
};

/// Printed sum-of-squares decomposition cells.
struct PublishedDecomposition {
    double ss_between = 0.0;
    double ss_within = 0.0;
    double ss_total = 0.0;
    double df_between = 0.0;
    double df_within = 0.0;
    double ms_between = 0.0;
    double ms_within = 0.0;
    double f = 0.0;
    double p = 0.0;
};

/// Everything the study reports for one dependent variable. Group means
/// are embedded at higher precision than the prose quotes them: the
/// printed pairwise mean differences are exact, so they are folded back
/// onto an anchor chosen to round to the quoted two-decimal means. All
/// omnibus and pairwise statistics are translation invariant, so only
/// those differences matter. Economy rate and combined bowling rate
/// carry no group summaries because none were reported; only their
/// decomposition cells can be checked.
struct StudyVariable {
    DependentVariable variable = DependentVariable::Av;
    VarianceBranch branch = VarianceBranch::Homogeneous;
    double levene_p = 0.0;
    bool has_summaries = false;
    std::array<GroupSummary, 3> summaries{};
    std::optional<double> ms_within_hint;
    std::optional<PublishedOmnibus> omnibus;
    std::optional<PublishedDecomposition> decomposition;
    std::vector<PublishedPair> pairwise;
};

namespace detail {

inline std::array<GroupSummary, 3> study_groups(double mean_fast, double sd_fast,
                                                double mean_fm, double sd_fm,
                                                double mean_mf, double sd_mf) {
    return {GroupSummary{"fast", 62, mean_fast, sd_fast * sd_fast},
            GroupSummary{"FM", 168, mean_fm, sd_fm * sd_fm},
            GroupSummary{"MF", 55, mean_mf, sd_mf * sd_mf}};
}

inline std::vector<StudyVariable> build_study_variables() {
    std::vector<StudyVariable> vars;

    {
        StudyVariable v;
        v.variable = DependentVariable::Av;
        v.branch = VarianceBranch::Heterogeneous;
        v.levene_p = 0.004;
        v.has_summaries = true;
        v.summaries = study_groups(32.0780000000, 9.58, 36.59202, 10.38, 42.5779800000, 13.52);
        v.omnibus = PublishedOmnibus{TestKind::Welch, 11.897, 2.0, 110.700, 0.000};
        v.pairwise = {{0, 1, -4.51402, 1.45628, 0.007, -7.9710, -1.0571, true},
                      {0, 2, -10.49997, 2.19167, 0.000, -15.7175, -5.2824, true},
                      {1, 2, -5.98596, 1.99153, 0.010, -10.7467, -1.2252, true}};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::Sr;
        v.branch = VarianceBranch::Heterogeneous;
        v.levene_p = 0.000;
        v.has_summaries = true;
        v.summaries = study_groups(58.5790850000, 13.10, 70.019805, 17.15, 81.5209150000, 25.44);
        v.omnibus = PublishedOmnibus{TestKind::Welch, 24.229, 2.0, 113.346, 0.000};
        v.pairwise = {{0, 1, -11.44072, 2.12565, 0.000, -16.4755, -6.4060, true},
                      {0, 2, -22.94183, 3.81212, 0.000, -32.0487, -13.8349, true},
                      {1, 2, -11.50111, 3.67609, 0.007, -20.3017, -2.7005, true}};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::Er;
        v.branch = VarianceBranch::Homogeneous;
        v.levene_p = 0.207;
        v.omnibus = PublishedOmnibus{TestKind::Anova, 1.908, 2.0, 282.0, 0.150};
        v.decomposition =
            PublishedDecomposition{0.732, 54.136, 54.869, 2.0, 282.0, 0.366, 0.192, 1.908, 0.150};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::Cbr;
        v.branch = VarianceBranch::Homogeneous;
        v.levene_p = 0.158;
        v.omnibus = PublishedOmnibus{TestKind::Anova, 0.675, 2.0, 282.0, 0.510};
        v.decomposition =
            PublishedDecomposition{1.677, 349.978, 351.655, 2.0, 282.0, 0.838, 1.241, 0.675, 0.510};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::WpmTop;
        v.branch = VarianceBranch::Homogeneous;
        v.levene_p = 0.188;
        v.has_summaries = true;
        v.summaries = study_groups(1.1437261751, 0.33, 1.0462739, 0.37, 0.8466305339, 0.45);
        v.ms_within_hint = 0.143;
        v.omnibus = PublishedOmnibus{TestKind::Anova, 9.444, 2.0, 282.0, 0.000};
        v.decomposition =
            PublishedDecomposition{2.695, 40.242, 42.937, 2.0, 282.0, 1.348, 0.143, 9.444, 0.000};
        v.pairwise = {
            {0, 1, 0.0974522751, 0.0561342972, 0.194, -0.0348089161, 0.2297134665, false},
            {0, 2, 0.2970956412, 0.0699730168, 0.000, 0.1322282601, 0.4619630224, true},
            {1, 2, 0.1996433661, 0.0586855667, 0.002, 0.0613709842, 0.3379157479, true}};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::WpmMiddle;
        v.branch = VarianceBranch::Homogeneous;
        v.levene_p = 0.270;
        v.has_summaries = true;
        v.summaries = study_groups(1.3105764519, 0.34, 1.0457317, 0.35, 0.8942682025, 0.42);
        v.ms_within_hint = 0.133;
        v.omnibus = PublishedOmnibus{TestKind::Anova, 20.240, 2.0, 282.0, 0.000};
        v.decomposition =
            PublishedDecomposition{5.381, 37.485, 42.866, 2.0, 282.0, 2.690, 0.133, 20.240, 0.000};
        v.pairwise = {
            {0, 1, 0.2648447519, 0.0541775293, 0.000, 0.1371940119, 0.3924954919, true},
            {0, 2, 0.4163082495, 0.0675338494, 0.000, 0.2571879287, 0.5754285703, true},
            {1, 2, 0.1514634975, 0.0566398650, 0.022, 0.0180111093, 0.2849158858, true}};
        vars.push_back(std::move(v));
    }
    {
        StudyVariable v;
        v.variable = DependentVariable::WpmLower;
        v.branch = VarianceBranch::Homogeneous;
        v.levene_p = 0.999;
        v.has_summaries = true;
        v.summaries = study_groups(0.9197710948, 0.33, 0.7188767, 0.33, 0.5511232208, 0.32);
        v.ms_within_hint = 0.108;
        v.omnibus = PublishedOmnibus{TestKind::Anova, 18.579, 2.0, 282.0, 0.000};
        v.decomposition =
            PublishedDecomposition{4.013, 30.459, 34.472, 2.0, 282.0, 2.007, 0.108, 18.579, 0.000};
        v.pairwise = {
            {0, 1, 0.2008943948, 0.0488366468, 0.000, 0.0858276101, 0.3159611796, true},
            {0, 2, 0.3686478740, 0.0608762856, 0.000, 0.2252138156, 0.5120819325, true},
            {1, 2, 0.1677534792, 0.0510562426, 0.003, 0.0474569793, 0.2880499791, true}};
        vars.push_back(std::move(v));
    }
    return vars;
}

} // namespace detail

/// Study constants for the seven dependent variables, in canonical order.
inline const std::vector<StudyVariable>& study_variables() {
    static const std::vector<StudyVariable> vars = detail::build_study_variables();
    return vars;
}

inline const StudyVariable& study_variable(DependentVariable variable) {
    for (const StudyVariable& v : study_variables())
        if (v.variable == variable) return v;
    throw DomainError("no study constants for variable");
}

/// One recomputed table cell next to its printed counterpart.
struct CellDelta {
    std::string table;
    std::string cell;
    double computed = 0.0;
    double published = 0.0;

    double difference() const { return computed - published; }
};

/// Replication output for one dependent variable. Variables without
/// published group summaries (er, cbr) carry no report; their deltas
/// re-derive the F ratio and its p-value from the printed sum-of-squares
/// cells instead.
struct ReplicationEntry {
    DependentVariable variable = DependentVariable::Av;
    std::optional<AnalysisReport> report;
    std::vector<CellDelta> deltas;
};

namespace detail {

inline std::string pair_prefix(const StudyVariable& v, const PublishedPair& pair) {
    return std::string(v.summaries[pair.i].label) + "_" + v.summaries[pair.j].label;
}

inline const PairwiseComparison& find_comparison(const std::vector<PairwiseComparison>& rows,
                                                 const std::string& gi, const std::string& gj) {
    for (const PairwiseComparison& row : rows)
        if (row.group_i == gi && row.group_j == gj) return row;
    throw DomainError("pairwise row not found for " + gi + " vs " + gj);
}

inline void append_omnibus_deltas(std::vector<CellDelta>& deltas, const std::string& table,
                                  const OmnibusResult& computed, const PublishedOmnibus& printed) {
    deltas.push_back({table, "statistic", computed.statistic, printed.statistic});
    if (printed.kind == TestKind::Welch)
        deltas.push_back({table, "df2", computed.df2, printed.df2});
    deltas.push_back({table, "p", computed.p, printed.p});
}

inline void append_decomposition_deltas(std::vector<CellDelta>& deltas, const std::string& table,
                                        const AnovaDecomposition& computed,
                                        const PublishedDecomposition& printed) {
    deltas.push_back({table, "ss_between", computed.ss_between, printed.ss_between});
    deltas.push_back({table, "ss_within", computed.ss_within, printed.ss_within});
    deltas.push_back({table, "ss_total", computed.ss_total, printed.ss_total});
    deltas.push_back({table, "ms_between", computed.ms_between, printed.ms_between});
    deltas.push_back({table, "ms_within", computed.ms_within, printed.ms_within});
}

inline void append_pairwise_deltas(std::vector<CellDelta>& deltas, const std::string& table,
                                   const StudyVariable& v,
                                   const std::vector<PairwiseComparison>& rows) {
    for (const PublishedPair& pair : v.pairwise) {
        const PairwiseComparison& row =
            find_comparison(rows, v.summaries[pair.i].label, v.summaries[pair.j].label);
        const std::string prefix = pair_prefix(v, pair);
        deltas.push_back({table, prefix + ".difference", row.mean_difference, pair.difference});
        deltas.push_back({table, prefix + ".std_error", row.std_error, pair.std_error});
        deltas.push_back({table, prefix + ".p", row.p, pair.p});
        deltas.push_back({table, prefix + ".ci_lower", row.ci_lower, pair.ci_lower});
        deltas.push_back({table, prefix + ".ci_upper", row.ci_upper, pair.ci_upper});
    }
}

inline ReplicationEntry replicate_from_summaries(const StudyVariable& v, double alpha) {
    ReplicationEntry entry;
    entry.variable = v.variable;
    const std::string name{to_string(v.variable)};
    entry.report =
        run_pipeline_from_summaries(v.summaries, v.branch, v.ms_within_hint, alpha, false, name);
    const AnalysisReport& report = *entry.report;

    if (v.omnibus) {
        const std::string table =
            (v.omnibus->kind == TestKind::Welch ? "welch_" : "anova_") + name;
        append_omnibus_deltas(entry.deltas, table, report.omnibus, *v.omnibus);
        if (v.decomposition && report.decomposition)
            append_decomposition_deltas(entry.deltas, table, *report.decomposition,
                                        *v.decomposition);
    }
    if (!v.pairwise.empty() && report.posthoc) {
        const std::string table = (v.branch == VarianceBranch::Heterogeneous
                                       ? "games_howell_"
                                       : "tukey_kramer_") +
                                  name;
        append_pairwise_deltas(entry.deltas, table, v, *report.posthoc);
    }
    return entry;
}

inline ReplicationEntry replicate_from_decomposition(const StudyVariable& v) {
    ReplicationEntry entry;
    entry.variable = v.variable;
    const PublishedDecomposition& d = *v.decomposition;
    const std::string table = "anova_" + std::string{to_string(v.variable)};

    // Only the printed sum-of-squares cells are reusable here; the F
    // ratio and p-value are re-derived from them and compared against
    // the printed headline values.
    const double ms_between = d.ss_between / d.df_between;
    const double ms_within = d.ss_within / d.df_within;
    const double f = ms_between / ms_within;
    const double p = f_survival(f, d.df_between, d.df_within);
    entry.deltas.push_back({table, "ms_between", ms_between, d.ms_between});
    entry.deltas.push_back({table, "ms_within", ms_within, d.ms_within});
    entry.deltas.push_back({table, "statistic", f, d.f});
    entry.deltas.push_back({table, "p", p, d.p});
    entry.deltas.push_back({table, "ss_total", d.ss_between + d.ss_within, d.ss_total});
    return entry;
}

} // namespace detail

/// Re-run the inference pipeline on the embedded study constants for
/// every dependent variable and report each recomputed table cell next
/// to its printed value. Variables with published group summaries get a
/// full pipeline report; the rest are checked at the decomposition
/// level only.
inline std::vector<ReplicationEntry> replicate_all(double alpha = 0.05) {
    std::vector<ReplicationEntry> entries;
    for (const StudyVariable& v : study_variables()) {
        if (v.has_summaries)
            entries.push_back(detail::replicate_from_summaries(v, alpha));
        else
            entries.push_back(detail::replicate_from_decomposition(v));
    }
    return entries;
}

} // namespace pacestats

#endif
