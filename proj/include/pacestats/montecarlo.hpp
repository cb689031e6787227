#ifndef PACESTATS_MONTECARLO_HPP
#define PACESTATS_MONTECARLO_HPP

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "hypothesis.hpp"

namespace pacestats {

/// Normal sampling plan for the Type I error simulation. Equal means put
/// the simulation in the null regime the headline rates refer to.
struct SimulationConfig {
    int group_count = 3;
    std::vector<int> group_sizes;
    std::vector<double> group_means;
    std::vector<double> group_sds;
    long replications = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

struct SimulationOutcome {
    double anova_rejection_rate = 0.0;
    double welch_rejection_rate = 0.0;
    double uncorrected_ttest_familywise_rate = 0.0;
    long replications = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct RejectionCounts {
    long anova = 0;
    long welch = 0;
    long familywise = 0;
};

// One replication: draw every group, then apply the three procedures.
// The replication owns an engine derived from (seed, index), so results
// do not depend on how replications are distributed over threads.
inline RejectionCounts run_replication(const SimulationConfig& config,
                                       std::uint64_t stream_base, long index) {
    std::mt19937_64 engine(splitmix64(stream_base + static_cast<std::uint64_t>(index)));
    std::normal_distribution<double> standard(0.0, 1.0);

    const std::size_t k = static_cast<std::size_t>(config.group_count);
    std::vector<GroupSummary> summaries(k);
    for (std::size_t g = 0; g < k; ++g) {
        const int n = config.group_sizes[g];
        double sum = 0.0;
        double ss = 0.0;
        // Welford accumulation keeps one pass per group.
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = config.group_means[g] + config.group_sds[g] * standard(engine);
            sum += x;
            const double delta = x - mean;
            mean += delta / (i + 1);
            ss += delta * (x - mean);
        }
        summaries[g] = GroupSummary{"", static_cast<std::size_t>(n), sum / n, ss / (n - 1)};
    }

    RejectionCounts counts;
    if (oneway_anova(summaries).omnibus.p < config.alpha) counts.anova = 1;
    if (welch_anova(summaries).p < config.alpha) counts.welch = 1;
    for (std::size_t i = 0; i < k && counts.familywise == 0; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (pooled_t_test(summaries[i], summaries[j]).p < config.alpha) {
                counts.familywise = 1;
                break;
            }
        }
    }
    return counts;
}

} // namespace detail

/// Estimate rejection rates under the configured sampling plan for
/// (a) the one-way anova, (b) the Welch anova, and (c) the naive
/// procedure rejecting when ANY uncorrected pairwise pooled t-test
/// rejects. Deterministic for a given (config, seed) regardless of
/// thread count: every replication derives its own generator.
inline SimulationOutcome simulate_type1_error(const SimulationConfig& config, int threads = 1) {
    if (config.group_count < 2) throw DomainError("simulation requires at least 2 groups");
    const std::size_t k = static_cast<std::size_t>(config.group_count);
    if (config.group_sizes.size() != k || config.group_means.size() != k ||
        config.group_sds.size() != k)
        throw DomainError("group_sizes, group_means and group_sds must match group_count");
    for (int n : config.group_sizes)
        if (n < 2) throw DomainError("simulation requires group sizes of at least 2");
    for (double sd : config.group_sds)
        if (!(sd > 0.0)) throw DomainError("simulation requires positive group sds");
    if (config.replications < 1) throw DomainError("simulation requires at least 1 replication");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw DomainError("alpha must lie strictly between 0 and 1");

    const std::uint64_t stream_base = detail::splitmix64(config.seed);
    const long reps = config.replications;
    const int worker_count = std::max(1, threads);

    std::vector<detail::RejectionCounts> partials(static_cast<std::size_t>(worker_count));
    auto worker = [&](int w) {
        detail::RejectionCounts local;
        for (long r = w; r < reps; r += worker_count) {
            const detail::RejectionCounts c = detail::run_replication(config, stream_base, r);
            local.anova += c.anova;
            local.welch += c.welch;
            local.familywise += c.familywise;
        }
        partials[static_cast<std::size_t>(w)] = local;
    };

    if (worker_count == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(worker, w);
        for (std::thread& t : pool) t.join();
    }

    detail::RejectionCounts total;
    for (const detail::RejectionCounts& c : partials) {
        total.anova += c.anova;
        total.welch += c.welch;
        total.familywise += c.familywise;
    }

    SimulationOutcome outcome;
    outcome.anova_rejection_rate = static_cast<double>(total.anova) / static_cast<double>(reps);
    outcome.welch_rejection_rate = static_cast<double>(total.welch) / static_cast<double>(reps);
    outcome.uncorrected_ttest_familywise_rate =
        static_cast<double>(total.familywise) / static_cast<double>(reps);
    outcome.replications = reps;
    outcome.seed = config.seed;
    return outcome;
}

/// Convenience builder for the equal-group null configuration.
inline SimulationConfig null_simulation_config(int groups, int per_group, long replications,
                                               std::uint64_t seed, double alpha = 0.05) {
    SimulationConfig config;
    config.group_count = groups;
    config.group_sizes.assign(static_cast<std::size_t>(groups), per_group);
    config.group_means.assign(static_cast<std::size_t>(groups), 0.0);
    config.group_sds.assign(static_cast<std::size_t>(groups), 1.0);
    config.replications = replications;
    config.alpha = alpha;
    config.seed = seed;
    return config;
}

} // namespace pacestats

#endif
