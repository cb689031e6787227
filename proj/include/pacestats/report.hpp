#ifndef PACESTATS_REPORT_HPP
#define PACESTATS_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pipeline.hpp"

namespace pacestats {

enum class ReportFormat { Markdown, Json, Csv };

inline std::optional<ReportFormat> parse_report_format(std::string_view text) {
    if (text == "markdown") return ReportFormat::Markdown;
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    return std::nullopt;
}

namespace detail {

inline std::string fixed(double v, int places) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

// Statistics render to 3 decimals; integral degrees of freedom lose the
// fraction; p-values below 5e-4 display as the floor "0.000".
inline std::string fmt_stat(double v) { return fixed(v, 3); }

inline std::string fmt_df(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) return fixed(v, 0);
    return fixed(v, 3);
}

inline std::string fmt_p(double p) {
    if (p < 5e-4) return "0.000";
    return fixed(p, 3);
}

inline std::string fmt_alpha(double alpha) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

inline nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline std::string render_markdown(const AnalysisReport& r) {
    std::string out;
    out += "## " + (r.dependent_variable.empty() ? std::string("analysis")
                                                 : r.dependent_variable) +
           " (alpha = " + fmt_alpha(r.alpha) + ")\n\n";

    out += "| group | n | mean | sd |\n|---|---:|---:|---:|\n";
    for (const GroupSummary& g : r.group_summaries) {
        out += "| " + g.label + " | " + std::to_string(g.n) + " | " + fmt_stat(g.mean) +
               " | " + fmt_stat(g.sd()) + " |\n";
    }
    out += "\n";

    if (r.levene_asserted) {
        out += "Variance branch asserted externally: " + std::string(to_string(r.branch)) +
               " (spread test not computed).\n\n";
    } else if (r.levene) {
        out += "Levene's test: W = " + fmt_stat(r.levene->statistic) + ", df = (" +
               fmt_df(r.levene->df1) + ", " + fmt_df(r.levene->df2) + "), p = " +
               fmt_p(r.levene->p) + " -> " + std::string(to_string(r.branch)) +
               " variances\n\n";
    }

    if (r.branch == VarianceBranch::Homogeneous) {
        out += "### One-way analysis of variance\n\n";
        if (r.decomposition) {
            const AnovaDecomposition& d = *r.decomposition;
            out += "| source | sum of squares | df | mean square | F | p |\n";
            out += "|---|---:|---:|---:|---:|---:|\n";
            out += "| between groups | " + fmt_stat(d.ss_between) + " | " + fmt_df(d.df_between) +
                   " | " + fmt_stat(d.ms_between) + " | " + fmt_stat(r.omnibus.statistic) +
                   " | " + fmt_p(r.omnibus.p) + " |\n";
            out += "| within groups | " + fmt_stat(d.ss_within) + " | " + fmt_df(d.df_within) +
                   " | " + fmt_stat(d.ms_within) + " |  |  |\n";
            out += "| total | " + fmt_stat(d.ss_total) + " | " +
                   fmt_df(d.df_between + d.df_within) + " |  |  |  |\n";
        }
    } else {
        out += "### Welch's heteroscedastic test\n\n";
        out += "| statistic | df1 | df2 | p |\n|---:|---:|---:|---:|\n";
        out += "| " + fmt_stat(r.omnibus.statistic) + " | " + fmt_df(r.omnibus.df1) + " | " +
               fmt_df(r.omnibus.df2) + " | " + fmt_p(r.omnibus.p) + " |\n";
    }
    out += "\n";

    if (r.posthoc) {
        out += r.branch == VarianceBranch::Homogeneous
                   ? "### Pairwise comparisons (Tukey-Kramer)\n\n"
                   : "### Pairwise comparisons (Games-Howell)\n\n";
        out += "| group i | group j | mean difference | std. error | df | p | ci lower | ci "
               "upper |\n";
        out += "|---|---|---:|---:|---:|---:|---:|---:|\n";
        for (const PairwiseComparison& row : *r.posthoc) {
            out += "| " + row.group_i + " | " + row.group_j + " | " +
                   fmt_stat(row.mean_difference) + (row.significant ? "*" : "") + " | " +
                   fmt_stat(row.std_error) + " | " + fmt_df(row.df) + " | " + fmt_p(row.p) +
                   " | " + fmt_stat(row.ci_lower) + " | " + fmt_stat(row.ci_upper) + " |\n";
        }
        out += "\n`*` the mean difference is significant at the " + fmt_alpha(r.alpha) +
               " level\n";
    } else {
        out += "No pairwise comparisons: omnibus p = " + fmt_p(r.omnibus.p) +
               " >= alpha = " + fmt_alpha(r.alpha) + ".\n";
    }
    return out;
}

inline std::string render_csv(const AnalysisReport& r) {
    std::string out;
    out += "section,values\n";
    out += "meta,variable," +
           (r.dependent_variable.empty() ? std::string("analysis") : r.dependent_variable) +
           "\n";
    out += "meta,alpha," + fmt_alpha(r.alpha) + "\n";
    out += "meta,branch," + std::string(to_string(r.branch)) + "\n";
    for (const GroupSummary& g : r.group_summaries) {
        out += "group," + g.label + "," + std::to_string(g.n) + "," + fixed(g.mean, 7) + "," +
               fixed(g.sd(), 7) + "\n";
    }
    if (r.levene) {
        out += "levene," + fmt_stat(r.levene->statistic) + "," + fmt_df(r.levene->df1) + "," +
               fmt_df(r.levene->df2) + "," + fmt_p(r.levene->p) + ",computed\n";
    } else {
        out += "levene,,,,,asserted\n";
    }
    out += "omnibus," + std::string(to_string(r.omnibus.kind)) + "," +
           fmt_stat(r.omnibus.statistic) + "," + fmt_df(r.omnibus.df1) + "," +
           fmt_df(r.omnibus.df2) + "," + fmt_p(r.omnibus.p) + "\n";
    if (r.decomposition) {
        const AnovaDecomposition& d = *r.decomposition;
        out += "decomposition," + fmt_stat(d.ss_between) + "," + fmt_stat(d.ss_within) + "," +
               fmt_stat(d.ss_total) + "," + fmt_stat(d.ms_within) + "," + fmt_df(d.df_within) +
               "\n";
    }
    if (r.posthoc) {
        for (const PairwiseComparison& row : *r.posthoc) {
            out += "posthoc," + row.group_i + "," + row.group_j + "," +
                   fixed(row.mean_difference, 7) + "," + fixed(row.std_error, 7) + "," +
                   fmt_df(row.df) + "," + fmt_p(row.p) + "," + fixed(row.ci_lower, 7) + "," +
                   fixed(row.ci_upper, 7) + "," + (row.significant ? "1" : "0") + "\n";
        }
    }
    return out;
}

inline nlohmann::ordered_json report_json(const AnalysisReport& r) {
    nlohmann::ordered_json j;
    j["variable"] = r.dependent_variable;
    j["alpha"] = r.alpha;
    nlohmann::ordered_json levene;
    if (r.levene) {
        levene["stat"] = json_number(r.levene->statistic);
        levene["df1"] = r.levene->df1;
        levene["df2"] = r.levene->df2;
        levene["p"] = r.levene->p;
    } else {
        levene["stat"] = nullptr;
        levene["df1"] = nullptr;
        levene["df2"] = nullptr;
        levene["p"] = nullptr;
    }
    levene["asserted"] = r.levene_asserted;
    j["levene"] = levene;
    j["branch"] = std::string(to_string(r.branch));
    j["groups"] = nlohmann::ordered_json::array();
    for (const GroupSummary& g : r.group_summaries) {
        j["groups"].push_back({{"label", g.label},
                               {"n", g.n},
                               {"mean", g.mean},
                               {"variance", g.variance}});
    }
    j["omnibus"] = {{"kind", std::string(to_string(r.omnibus.kind))},
                    {"stat", json_number(r.omnibus.statistic)},
                    {"df1", r.omnibus.df1},
                    {"df2", r.omnibus.df2},
                    {"p", r.omnibus.p},
                    {"degenerate", r.omnibus.degenerate}};
    if (r.decomposition) {
        const AnovaDecomposition& d = *r.decomposition;
        j["decomposition"] = {{"ss_between", d.ss_between}, {"ss_within", d.ss_within},
                              {"ss_total", d.ss_total},     {"ms_between", d.ms_between},
                              {"ms_within", d.ms_within},   {"df_between", d.df_between},
                              {"df_within", d.df_within}};
    }
    if (r.posthoc) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const PairwiseComparison& row : *r.posthoc) {
            rows.push_back({{"i", row.group_i},
                            {"j", row.group_j},
                            {"diff", row.mean_difference},
                            {"se", row.std_error},
                            {"df", row.df},
                            {"p", row.p},
                            {"ci", {row.ci_lower, row.ci_upper}},
                            {"significant", row.significant}});
        }
        j["posthoc"] = rows;
    }
    return j;
}

inline std::string render_json(const AnalysisReport& r) { return report_json(r).dump(2) + "\n"; }

} // namespace detail

/// Render a report deterministically; identical reports yield identical
/// bytes. Markdown and csv round statistics for display, json carries
/// full precision.
inline std::string render_report(const AnalysisReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown: return detail::render_markdown(report);
        case ReportFormat::Csv: return detail::render_csv(report);
        case ReportFormat::Json: return detail::render_json(report);
    }
    throw DomainError("unknown report format");
}

} // namespace pacestats

#endif
