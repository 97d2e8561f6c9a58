#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expmod/estimators.hpp"
#include "expmod/generators.hpp"

namespace expmod::bench {

struct Column {
    std::string name;
    std::string description;
};

/// Plot-ready result of one suite.
struct Table {
    std::string suite;
    std::string summary;
    std::vector<Column> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& table);

struct Config {
    std::uint64_t seed = 1;
    /// Largest m run through brute force.
    std::size_t brute_force_cap = kDefaultEnumerationCap;
    /// Cap handed to PWP (its edge sets are smaller than m).
    std::size_t pwp_cap = 30;
};

/// Planted-partition configuration of the accuracy and runtime experiments.
struct PlantedConfig {
    std::size_t m;
    std::size_t k;
    std::size_t nc;
    double p_in;
    double p_out;
};

/// m = 9, 14, 21, 25, 35 with three communities.
const std::vector<PlantedConfig>& accuracy_configs();

/// Clear (p_in = 0.99, p_out = 0.01) and less clear (0.72, 0.12)
/// community structure, both k = 3, nc = 9.
SbmParams ccs_params(std::uint64_t seed);
SbmParams lccs_params(std::uint64_t seed);

struct Instance {
    ProbabilisticNetwork network;
    CommunityAssignment communities;
    std::uint64_t seed;  // generator seed that produced the topology
};

/// Draws SBM topologies with seeds substream(seed, 0), (seed, 1), ... until
/// one has exactly `target_edges` edges, then assigns probabilities.
/// Throws std::runtime_error after `attempts` misses.
Instance sbm_with_edge_count(SbmParams params, std::size_t target_edges,
                             const ProbabilityMode& mode, std::uint64_t seed,
                             std::size_t attempts = 100000);

/// Same topology, probabilities replaced.
ProbabilisticNetwork with_probabilities(const Topology& topology, const ProbabilityMode& mode,
                                        std::uint64_t seed);
Topology topology_of(const ProbabilisticNetwork& net);

/// Smallest per-call wall time over repeated calls, repeating until
/// `budget_seconds` has been spent or `max_repeats` calls were made.
double time_call(const std::function<void()>& fn, double budget_seconds = 0.05,
                 std::size_t max_repeats = 1000);

/// Community sizes for the size-variance experiment: one large community and
/// k - 1 of size `small`, summing to n.
std::vector<std::size_t> skewed_sizes(std::size_t n, std::size_t k, std::size_t small);
double size_variance(std::span<const std::size_t> sizes);

Table accuracy_suite(const Config& cfg);
Table runtime_suite(const Config& cfg);
Table weighting_suite(const Config& cfg);
Table thresholding_suite(const Config& cfg);
Table sampling_convergence_suite(const Config& cfg);
Table communities_suite(const Config& cfg);
Table variance_suite(const Config& cfg);
Table models_suite(const Config& cfg);

const std::vector<std::string_view>& suite_names();
/// Throws std::invalid_argument for an unknown suite name.
Table run_suite(std::string_view name, const Config& cfg);

/// Markdown description of every suite's columns.
std::string suites_readme();
/// Host, compiler and time stamp, one "key: value" per line.
std::string host_metadata();

}  // namespace expmod::bench
