#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "expmod/network.hpp"

namespace expmod {

/// Deterministic simple undirected graph, edges stored with u < v.
struct Topology {
    std::size_t node_count = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;

    std::size_t edge_count() const noexcept { return edges.size(); }
};

/// Planted-partition model: k blocks of nc nodes.
struct SbmParams {
    std::size_t k = 1;
    std::size_t nc = 1;
    double p_in = 0.0;
    double p_out = 0.0;
    std::uint64_t seed = 0;
};

struct PlantedTopology {
    Topology topology;
    CommunityAssignment communities;
};

/// Node v belongs to block v / nc. Pairs are visited in (i, j), i < j order.
PlantedTopology gen_sbm(const SbmParams& params);

/// G(n, p).
Topology gen_er(std::size_t n, double p, std::uint64_t seed);
/// G(n, m): m distinct edges chosen uniformly.
Topology gen_er_edges(std::size_t n, std::size_t m, std::uint64_t seed);

/// Preferential attachment from a core of attach + 1 isolated nodes; each
/// later node links to `attach` distinct earlier nodes, giving exactly
/// attach * (n - attach - 1) edges.
Topology gen_ba(std::size_t n, std::size_t attach, std::uint64_t seed);

/// Watts-Strogatz: ring lattice of even `degree`, each edge's far endpoint
/// rewired with probability `rewire` (duplicates and loops avoided).
Topology gen_ws(std::size_t n, std::size_t degree, double rewire, std::uint64_t seed);

/// Forest fire with forward burning only. Each new node links to a uniform
/// ambassador and spreads through unburnt neighbours, burning a geometric
/// number (mean fwd_burn / (1 - fwd_burn)) at every step.
Topology gen_ffn(std::size_t n, double fwd_burn, std::uint64_t seed);

struct ConstantProbability {
    double p;
};
/// Every edge gets the p >= 0.5 solving H2(p) = ratio.
struct EntropyTarget {
    double ratio;
};
/// Independent draws, uniform on (0, 1].
struct UniformProbability {};

using ProbabilityMode = std::variant<ConstantProbability, EntropyTarget, UniformProbability>;

ProbabilisticNetwork assign_probabilities(const Topology& topology, const ProbabilityMode& mode,
                                          std::uint64_t seed);

/// Root in [0.5, 1] of H2(p) = ratio, by bisection to 1e-12.
double probability_for_entropy(double ratio);

/// Uniform labels over k communities; every community gets at least one node
/// (k distinct random nodes are seeded first). Requires 1 <= k <= n.
CommunityAssignment random_assignment(std::size_t n, std::size_t k, std::uint64_t seed);

/// Random assignment with prescribed community sizes (summing to n).
CommunityAssignment assignment_with_sizes(std::span<const std::size_t> sizes, std::uint64_t seed);

/// k contiguous blocks of node ids, sizes differing by at most one.
CommunityAssignment block_assignment(std::size_t n, std::size_t k);

}  // namespace expmod
