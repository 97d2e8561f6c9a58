#include "expmod/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "expmod/random.hpp"

namespace expmod {

namespace {

void require_density(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void canonicalise(Topology& t) {
    for (auto& [u, v] : t.edges)
        if (u > v) std::swap(u, v);
    std::sort(t.edges.begin(), t.edges.end());
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

}  // namespace

PlantedTopology gen_sbm(const SbmParams& params) {
    if (params.k < 1 || params.nc < 1) throw std::invalid_argument("SBM needs k >= 1 and nc >= 1");
    require_density(params.p_in, "p_in");
    require_density(params.p_out, "p_out");

    const std::size_t n = params.k * params.nc;
    Rng rng(params.seed);
    Topology topology{n, {}};
    std::vector<CommunityId> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<CommunityId>(v / params.nc);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = labels[i] == labels[j] ? params.p_in : params.p_out;
            if (rng.uniform() < p)
                topology.edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    return PlantedTopology{std::move(topology), CommunityAssignment(std::move(labels))};
}

Topology gen_er(std::size_t n, double p, std::uint64_t seed) {
    require_density(p, "p");
    Rng rng(seed);
    Topology topology{n, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p)
                topology.edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return topology;
}

Topology gen_er_edges(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    if (m > pairs)
        throw std::invalid_argument("G(n, m) with m = " + std::to_string(m) + " exceeds the " +
                                    std::to_string(pairs) + " available pairs");
    std::vector<std::pair<NodeId, NodeId>> all;
    all.reserve(pairs);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            all.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    Rng rng(seed);
    // Partial Fisher-Yates: the first m slots are a uniform m-subset.
    for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.below(pairs - i)]);
    all.resize(m);
    Topology topology{n, std::move(all)};
    canonicalise(topology);
    return topology;
}

Topology gen_ba(std::size_t n, std::size_t attach, std::uint64_t seed) {
    if (attach < 1) throw std::invalid_argument("BA needs attach >= 1");
    const std::size_t core = attach + 1;
    if (n < core) throw std::invalid_argument("BA needs n >= attach + 1");

    Rng rng(seed);
    Topology topology{n, {}};
    std::vector<NodeId> repeated(core);
    std::iota(repeated.begin(), repeated.end(), NodeId{0});
    std::vector<NodeId> targets;
    for (std::size_t v = core; v < n; ++v) {
        targets.clear();
        while (targets.size() < attach) {
            const NodeId t = repeated[rng.below(repeated.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (NodeId t : targets) {
            topology.edges.emplace_back(t, static_cast<NodeId>(v));
            repeated.push_back(t);
            repeated.push_back(static_cast<NodeId>(v));
        }
    }
    canonicalise(topology);
    return topology;
}

Topology gen_ws(std::size_t n, std::size_t degree, double rewire, std::uint64_t seed) {
    require_density(rewire, "rewire");
    if (degree % 2 != 0) throw std::invalid_argument("WS degree must be even");
    if (degree >= n) throw std::invalid_argument("WS degree must be smaller than n");

    std::vector<std::set<NodeId>> adjacency(n);
    std::vector<std::pair<NodeId, NodeId>> lattice;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j <= degree / 2; ++j) {
            const auto u = static_cast<NodeId>(i);
            const auto v = static_cast<NodeId>((i + j) % n);
            adjacency[u].insert(v);
            adjacency[v].insert(u);
            lattice.emplace_back(u, v);
        }

    Rng rng(seed);
    for (auto [u, v] : lattice) {
        if (!(rng.uniform() < rewire)) continue;
        if (adjacency[u].size() + 1 >= n) continue;
        NodeId w;
        do {
            w = static_cast<NodeId>(rng.below(n));
        } while (w == u || adjacency[u].count(w));
        adjacency[u].erase(v);
        adjacency[v].erase(u);
        adjacency[u].insert(w);
        adjacency[w].insert(u);
    }

    Topology topology{n, {}};
    for (std::size_t u = 0; u < n; ++u)
        for (NodeId v : adjacency[u])
            if (v > u) topology.edges.emplace_back(static_cast<NodeId>(u), v);
    return topology;
}

Topology gen_ffn(std::size_t n, double fwd_burn, std::uint64_t seed) {
    if (!(fwd_burn >= 0.0 && fwd_burn < 1.0))
        throw std::invalid_argument("forward burning probability must lie in [0, 1)");
    Rng rng(seed);
    std::vector<std::vector<NodeId>> adjacency(n);
    Topology topology{n, {}};
    std::vector<char> burnt(n, 0);
    std::vector<NodeId> touched, frontier, candidates;

    auto link = [&](NodeId a, NodeId b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
        topology.edges.emplace_back(a, b);
    };

    for (std::size_t i = 1; i < n; ++i) {
        const auto v = static_cast<NodeId>(i);
        const auto ambassador = static_cast<NodeId>(rng.below(i));
        touched = {v, ambassador};
        burnt[v] = burnt[ambassador] = 1;
        link(ambassador, v);
        frontier = {ambassador};
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const NodeId x = frontier[head];
            candidates.clear();
            for (NodeId y : adjacency[x])
                if (!burnt[y]) candidates.push_back(y);
            const std::size_t spread =
                std::min<std::size_t>(rng.geometric_failures(fwd_burn), candidates.size());
            for (std::size_t s = 0; s < spread; ++s) {
                std::swap(candidates[s], candidates[s + rng.below(candidates.size() - s)]);
                const NodeId y = candidates[s];
                burnt[y] = 1;
                touched.push_back(y);
                link(y, v);
                frontier.push_back(y);
            }
        }
        for (NodeId t : touched) burnt[t] = 0;
    }
    canonicalise(topology);
    return topology;
}

double probability_for_entropy(double ratio) {
    if (!(ratio >= 0.0 && ratio <= 1.0))
        throw std::invalid_argument("entropy ratio target must lie in [0, 1]");
    if (ratio == 0.0) return 1.0;
    if (ratio == 1.0) return 0.5;
    double lo = 0.5;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) > ratio)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ProbabilisticNetwork assign_probabilities(const Topology& topology, const ProbabilityMode& mode,
                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(topology.edges.size());
    double constant = 0.0;
    bool uniform = false;
    if (const auto* c = std::get_if<ConstantProbability>(&mode)) {
        if (!(c->p > 0.0 && c->p <= 1.0)) throw std::invalid_argument("probability must lie in (0, 1]");
        constant = c->p;
    } else if (const auto* e = std::get_if<EntropyTarget>(&mode)) {
        constant = probability_for_entropy(e->ratio);
    } else {
        uniform = true;
    }
    for (auto [u, v] : topology.edges)
        edges.push_back(Edge{u, v, uniform ? 1.0 - rng.uniform() : constant});
    return ProbabilisticNetwork(topology.node_count, std::move(edges));
}

CommunityAssignment random_assignment(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 1 || k > n) throw std::invalid_argument("random assignment needs 1 <= k <= n");
    Rng rng(seed);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    std::vector<CommunityId> labels(n);
    for (std::size_t i = 0; i < k; ++i) labels[order[i]] = static_cast<CommunityId>(i);
    for (std::size_t i = k; i < n; ++i) labels[order[i]] = static_cast<CommunityId>(rng.below(k));
    return CommunityAssignment(std::move(labels));
}

CommunityAssignment assignment_with_sizes(std::span<const std::size_t> sizes, std::uint64_t seed) {
    if (sizes.empty()) throw std::invalid_argument("at least one community size is required");
    if (std::find(sizes.begin(), sizes.end(), std::size_t{0}) != sizes.end())
        throw std::invalid_argument("community sizes must be positive");
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    Rng rng(seed);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    shuffle(order, rng);
    std::vector<CommunityId> labels(n);
    std::size_t next = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        for (std::size_t s = 0; s < sizes[c]; ++s) labels[order[next++]] = static_cast<CommunityId>(c);
    return CommunityAssignment(std::move(labels));
}

CommunityAssignment block_assignment(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("block assignment needs 1 <= k <= n");
    std::vector<CommunityId> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<CommunityId>(v * k / n);
    return CommunityAssignment(std::move(labels));
}

}  // namespace expmod
