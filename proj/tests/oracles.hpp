#pragma once

// Reference implementations used only by the tests. They share no code path
// with the library routines they check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "expmod/network.hpp"

namespace oracle {

/// PMF of a Bernoulli sum by visiting every mask once and bucketing by popcount.
inline std::vector<double> pmf_by_masks(const std::vector<double>& ps) {
    const std::size_t t = ps.size();
    std::vector<double> pmf(t + 1, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
        double prob = 1.0;
        for (std::size_t i = 0; i < t; ++i) prob *= (mask >> i & 1U) ? ps[i] : 1.0 - ps[i];
        pmf[static_cast<std::size_t>(std::popcount(mask))] += prob;
    }
    return pmf;
}

/// Literal double sum over node pairs with plain vectors.
inline double modularity_double_sum(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                    const std::vector<int>& label) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> k(n, 0.0);
    for (auto [u, v] : edges) {
        a[u][v] = a[v][u] = 1.0;
        k[u] += 1.0;
        k[v] += 1.0;
    }
    const double two_m = 2.0 * static_cast<double>(edges.size());
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (label[i] == label[j]) q += a[i][j] - k[i] * k[j] / two_m;
    return q / two_m;
}

/// Weighted modularity as a literal double sum.
inline double weighted_double_sum(const expmod::ProbabilisticNetwork& net,
                                  const expmod::CommunityAssignment& comm) {
    const std::size_t n = net.node_count();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    std::vector<double> s(n, 0.0);
    double total = 0.0;
    for (const auto& e : net.edges()) {
        w[e.u][e.v] = w[e.v][e.u] = e.p;
        s[e.u] += e.p;
        s[e.v] += e.p;
        total += e.p;
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (comm[static_cast<expmod::NodeId>(i)] == comm[static_cast<expmod::NodeId>(j)])
                q += w[i][j] - s[i] * s[j] / (2.0 * total);
    return q / (2.0 * total);
}

/// Expected modularity by enumerating worlds and scoring each with the
/// double-sum oracle.
inline double expected_modularity(const expmod::ProbabilisticNetwork& net,
                                  const expmod::CommunityAssignment& comm) {
    const std::size_t m = net.edge_count();
    std::vector<int> label(net.node_count());
    for (std::size_t v = 0; v < label.size(); ++v) label[v] = static_cast<int>(comm[static_cast<expmod::NodeId>(v)]);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double prob = 1.0;
        std::vector<std::pair<int, int>> present;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = net.edge(i);
            if (mask >> i & 1U) {
                prob *= e.p;
                present.emplace_back(static_cast<int>(e.u), static_cast<int>(e.v));
            } else {
                prob *= 1.0 - e.p;
            }
        }
        if (!present.empty()) total += prob * modularity_double_sum(net.node_count(), present, label);
    }
    return total;
}

/// Random simple graph with random probabilities in (0, 1] and a random
/// assignment that uses every community id.
struct RandomCase {
    expmod::ProbabilisticNetwork net;
    expmod::CommunityAssignment comm;
};

inline RandomCase random_case(std::mt19937_64& gen, std::size_t max_nodes, std::size_t max_edges,
                              std::size_t max_k, bool at_least_one_edge = true) {
    std::uniform_int_distribution<std::size_t> node_dist(2, max_nodes);
    const std::size_t n = node_dist(gen);
    std::vector<std::pair<expmod::NodeId, expmod::NodeId>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), gen);
    std::uniform_int_distribution<std::size_t> m_dist(at_least_one_edge ? 1 : 0,
                                                      std::min(max_edges, pairs.size()));
    const std::size_t m = m_dist(gen);
    std::uniform_real_distribution<double> p_dist(0.0, 1.0);
    std::vector<expmod::Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0 - p_dist(gen);
        if (i % 7 == 3) p = 1.0;
        edges.push_back({pairs[i].first, pairs[i].second, p});
    }
    std::uniform_int_distribution<std::size_t> k_dist(1, std::min(max_k, n));
    const std::size_t k = k_dist(gen);
    std::vector<expmod::CommunityId> labels(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), gen);
    std::uniform_int_distribution<std::size_t> label_dist(0, k - 1);
    for (std::size_t i = 0; i < n; ++i)
        labels[order[i]] = static_cast<expmod::CommunityId>(i < k ? i : label_dist(gen));
    return {expmod::ProbabilisticNetwork(n, std::move(edges)), expmod::CommunityAssignment(std::move(labels))};
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace oracle
