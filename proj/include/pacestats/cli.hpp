#ifndef PACESTATS_CLI_HPP
#define PACESTATS_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cricket.hpp"
#include "ingest.hpp"
#include "montecarlo.hpp"
#include "pipeline.hpp"
#include "published.hpp"
#include "report.hpp"

namespace pacestats {

inline constexpr int exit_success = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;
inline constexpr int exit_degenerate = 3;

namespace detail {

/// PACESTATS_ALPHA overrides the built-in 0.05 default; an explicit
/// --alpha flag still wins over the environment.
inline double default_alpha() {
    const char* env = std::getenv("PACESTATS_ALPHA");
    if (env == nullptr || *env == '\0') return 0.05;
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0 && value < 1.0))
        throw UsageError(std::string("PACESTATS_ALPHA must be a number in (0, 1), got '") + env +
                         "'");
    return value;
}

inline std::vector<DependentVariable> resolve_variables(const std::string& name) {
    if (name == "all") {
        return {all_dependent_variables.begin(), all_dependent_variables.end()};
    }
    const std::optional<DependentVariable> v = parse_dependent_variable(name);
    if (!v)
        throw UsageError("unknown variable '" + name +
                         "' (expected av, sr, er, cbr, wpm_top, wpm_middle, wpm_lower or all)");
    return {*v};
}

inline ReportFormat resolve_format(const std::string& name) {
    const std::optional<ReportFormat> f = parse_report_format(name);
    if (!f) throw UsageError("unknown format '" + name + "' (expected markdown, json or csv)");
    return *f;
}

inline void write_output(const std::string& text, const std::string& output_path,
                         std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path);
    if (!file) throw IoError("cannot open output file: " + output_path);
    file << text;
    if (!file.good()) throw IoError("cannot write output file: " + output_path);
}

inline std::string render_reports(const std::vector<AnalysisReport>& reports,
                                  ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const AnalysisReport& r : reports) arr.push_back(report_json(r));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) out += "\n";
        out += render_report(reports[i], format);
    }
    return out;
}

inline nlohmann::ordered_json delta_json(const CellDelta& d) {
    return {{"table", d.table},
            {"cell", d.cell},
            {"computed", json_number(d.computed)},
            {"published", json_number(d.published)},
            {"delta", json_number(d.difference())}};
}

inline std::string render_replication(const std::vector<ReplicationEntry>& entries,
                                      ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const ReplicationEntry& e : entries) {
            nlohmann::ordered_json item;
            item["variable"] = std::string(to_string(e.variable));
            if (e.report) item["report"] = report_json(*e.report);
            nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
            for (const CellDelta& d : e.deltas) deltas.push_back(delta_json(d));
            item["deltas"] = deltas;
            arr.push_back(item);
        }
        return arr.dump(2) + "\n";
    }
    if (format == ReportFormat::Csv) {
        std::string out = "section,values\n";
        for (const ReplicationEntry& e : entries) {
            if (e.report) out += render_csv(*e.report);
            for (const CellDelta& d : e.deltas) {
                out += "delta," + d.table + "," + d.cell + "," + fixed(d.computed, 7) + "," +
                       fixed(d.published, 7) + "," + fixed(d.difference(), 7) + "\n";
            }
        }
        return out;
    }
    std::string out;
    for (const ReplicationEntry& e : entries) {
        if (e.report) {
            out += render_markdown(*e.report);
        } else {
            out += "## " + std::string(to_string(e.variable)) +
                   "\n\nNo group summaries available; checking the printed decomposition "
                   "cells only.\n";
        }
        out += "\n### Recomputed cells vs. study values\n\n";
        out += "| table | cell | computed | published | delta |\n|---|---|---:|---:|---:|\n";
        for (const CellDelta& d : e.deltas) {
            out += "| " + d.table + " | " + d.cell + " | " + fixed(d.computed, 6) + " | " +
                   fixed(d.published, 6) + " | " + fixed(d.difference(), 6) + " |\n";
        }
        out += "\n";
    }
    return out;
}

inline std::string render_simulation(const SimulationOutcome& outcome) {
    nlohmann::ordered_json j;
    j["anova_rejection_rate"] = outcome.anova_rejection_rate;
    j["welch_rejection_rate"] = outcome.welch_rejection_rate;
    j["uncorrected_ttest_familywise_rate"] = outcome.uncorrected_ttest_familywise_rate;
    j["replications"] = outcome.replications;
    j["seed"] = outcome.seed;
    return j.dump(2) + "\n";
}

// The csv section rows of render_csv double as the per-variable texture
// here, so validate stays plain text.
inline std::string render_validation(const ParseResult& parsed,
                                     const std::vector<BowlerRecord>& eligible) {
    std::string out;
    out += "records parsed: " + std::to_string(parsed.records.size()) + "\n";
    out += "rows rejected: " + std::to_string(parsed.rejections.size()) + "\n";
    out += "eligible after filters: " + std::to_string(eligible.size()) + "\n";
    for (const RowRejection& r : parsed.rejections)
        out += "row " + std::to_string(r.row) + ": " + r.reason + "\n";
    return out;
}

inline int run_analyze(const std::string& input, const std::string& variable_name, double alpha,
                       ReportFormat format, bool force_posthoc, const std::string& output_path,
                       std::ostream& out, std::ostream& err) {
    const ParseResult parsed = parse_records_file(input);
    err << "parsed " << parsed.records.size() << " records, rejected "
        << parsed.rejections.size() << " rows\n";
    const std::vector<BowlerRecord> eligible = filter_eligible(parsed.records);
    err << "eligible after filters: " << eligible.size() << "\n";

    std::vector<AnalysisReport> reports;
    for (DependentVariable variable : resolve_variables(variable_name)) {
        const GroupedValues grouped = build_groups(eligible, variable);
        if (grouped.excluded_undefined > 0) {
            err << std::string(to_string(variable)) << ": excluded "
                << grouped.excluded_undefined << " bowlers with undefined indicator\n";
        }
        reports.push_back(run_pipeline(grouped.groups, alpha, force_posthoc,
                                       std::string(to_string(variable))));
    }
    write_output(render_reports(reports, format), output_path, out);
    return exit_success;
}

inline int run_replicate(const std::string& variable_name, double alpha, ReportFormat format,
                         const std::string& output_path, std::ostream& out) {
    std::vector<ReplicationEntry> entries = replicate_all(alpha);
    if (variable_name != "all") {
        const std::vector<DependentVariable> wanted = resolve_variables(variable_name);
        std::vector<ReplicationEntry> filtered;
        for (ReplicationEntry& e : entries)
            if (e.variable == wanted.front()) filtered.push_back(std::move(e));
        entries = std::move(filtered);
    }
    write_output(render_replication(entries, format), output_path, out);
    return exit_success;
}

inline int run_simulate(const SimulationConfig& config, int threads,
                        const std::string& output_path, std::ostream& out) {
    const SimulationOutcome outcome = simulate_type1_error(config, threads);
    write_output(render_simulation(outcome), output_path, out);
    return exit_success;
}

inline int run_validate(const std::string& input, const std::string& output_path,
                        std::ostream& out) {
    const ParseResult parsed = parse_records_file(input);
    const std::vector<BowlerRecord> eligible = filter_eligible(parsed.records);
    write_output(render_validation(parsed, eligible), output_path, out);
    return exit_success;
}

} // namespace detail

/// Parse and execute a command line (program name excluded). Returns a
/// process exit code: 0 success, 1 usage error, 2 data error, 3
/// degenerate or insufficient data.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bowling performance statistics toolkit"};
    app.require_subcommand(1);

    std::string input;
    std::string variable = "all";
    std::string format_name = "markdown";
    std::string output_path;
    double alpha = 0.05;
    bool alpha_given = false;
    bool force_posthoc = false;

    CLI::App* analyze = app.add_subcommand("analyze", "Run the inference pipeline on a dataset");
    analyze->add_option("--input", input, "CSV file of bowler records")->required();
    analyze->add_option("--variable", variable, "Dependent variable name or 'all'");
    analyze->add_option("--alpha", alpha, "Significance level in (0, 1)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->each([&](const std::string&) { alpha_given = true; });
    analyze->add_option("--format", format_name, "Output format: markdown, json or csv");
    analyze->add_flag("--force-posthoc", force_posthoc,
                      "Run pairwise comparisons even when the omnibus does not reject");
    analyze->add_option("--output", output_path, "Write the rendered output to this file");

    CLI::App* replicate =
        app.add_subcommand("replicate", "Recompute the study tables from embedded summaries");
    replicate->add_option("--variable", variable, "Dependent variable name or 'all'");
    replicate->add_option("--alpha", alpha, "Significance level in (0, 1)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->each([&](const std::string&) { alpha_given = true; });
    replicate->add_option("--format", format_name, "Output format: markdown, json or csv");
    replicate->add_option("--output", output_path, "Write the rendered output to this file");

    int groups = 3;
    int per_group = 20;
    std::vector<double> means;
    std::vector<double> sds;
    long reps = 10000;
    std::uint64_t seed = 0;
    int threads = 1;

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo Type I error rates under the null");
    simulate->add_option("--groups", groups, "Number of groups")->check(CLI::Range(2, 1000));
    simulate->add_option("--n", per_group, "Observations per group")
        ->check(CLI::Range(2, 100000000));
    simulate->add_option("--means", means, "Per-group means (default all 0)");
    simulate->add_option("--sds", sds, "Per-group standard deviations (default all 1)");
    simulate->add_option("--reps", reps, "Number of replications")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "Random seed")->required();
    simulate->add_option("--alpha", alpha, "Significance level in (0, 1)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->each([&](const std::string&) { alpha_given = true; });
    simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--output", output_path, "Write the json result to this file");

    CLI::App* validate =
        app.add_subcommand("validate", "Audit a dataset file and report rejected rows");
    validate->add_option("--input", input, "CSV file of bowler records")->required();
    validate->add_option("--output", output_path, "Write the audit to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (!alpha_given) alpha = detail::default_alpha();

        if (analyze->parsed()) {
            return detail::run_analyze(input, variable, alpha, detail::resolve_format(format_name),
                                       force_posthoc, output_path, out, err);
        }
        if (replicate->parsed()) {
            return detail::run_replicate(variable, alpha, detail::resolve_format(format_name),
                                         output_path, out);
        }
        if (simulate->parsed()) {
            const std::size_t k = static_cast<std::size_t>(groups);
            if (!means.empty() && means.size() != k)
                throw UsageError("--means must list one value per group");
            if (!sds.empty() && sds.size() != k)
                throw UsageError("--sds must list one value per group");
            for (double sd : sds)
                if (!(sd > 0.0)) throw UsageError("--sds values must be positive");

            SimulationConfig config;
            config.group_count = groups;
            config.group_sizes.assign(k, per_group);
            config.group_means = means.empty() ? std::vector<double>(k, 0.0) : means;
            config.group_sds = sds.empty() ? std::vector<double>(k, 1.0) : sds;
            config.replications = reps;
            config.alpha = alpha;
            config.seed = seed;
            return detail::run_simulate(config, threads, output_path, out);
        }
        return detail::run_validate(input, output_path, out);
    } catch (const CLI::ParseError& e) {
        // CLI11 reports help requests through the same channel; mirror
        // its exit semantics (help is a success).
        std::ostringstream capture;
        const int code = app.exit(e, capture, capture);
        (code == 0 ? out : err) << capture.str();
        return code == 0 ? exit_success : exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DegenerateDataError& e) {
        err << "error: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const InsufficientDataError& e) {
        err << "error: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
}

} // namespace pacestats

#endif
