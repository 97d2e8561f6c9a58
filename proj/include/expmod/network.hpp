#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "expmod/errors.hpp"

namespace expmod {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;
using EdgeIndex = std::size_t;

/// Largest edge set an exhaustive method enumerates by default (2^25 subsets).
inline constexpr std::size_t kDefaultEnumerationCap = 25;

/// Undirected edge with an existence probability in (0, 1].
struct Edge {
    NodeId u;
    NodeId v;
    double p;
};

/// Simple undirected graph whose edges exist independently with probability p.
///
/// Immutable after construction. The constructor rejects self-loops,
/// duplicate edges (in either endpoint order), endpoints >= node_count and
/// probabilities outside (0, 1].
class ProbabilisticNetwork {
public:
    ProbabilisticNetwork() = default;
    ProbabilisticNetwork(std::size_t node_count, std::vector<Edge> edges,
                         std::vector<std::string> node_labels = {});

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeIndex i) const { return edges_.at(i); }

    /// All edge probabilities in edge order.
    Eigen::VectorXd probabilities() const;
    /// Probabilities of the given edges, in the given order.
    Eigen::VectorXd probabilities(std::span<const EdgeIndex> subset) const;

    /// Original node label when the network was read from a file, else the id.
    std::string label(NodeId v) const;
    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

/// Total map node -> community with dense ids 0..k-1, every id used.
class CommunityAssignment {
public:
    CommunityAssignment() = default;
    explicit CommunityAssignment(std::vector<CommunityId> labels);

    /// Relabels arbitrary integer ids to dense ids, preserving their order.
    static CommunityAssignment compact(std::span<const std::int64_t> raw);
    /// Every node in one community.
    static CommunityAssignment single(std::size_t node_count);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t community_count() const noexcept { return community_count_; }
    CommunityId operator[](NodeId v) const { return labels_[v]; }
    CommunityId at(NodeId v) const { return labels_.at(v); }
    std::span<const CommunityId> labels() const noexcept { return labels_; }

    std::vector<NodeId> members(CommunityId c) const;
    std::vector<std::size_t> sizes() const;

private:
    std::vector<CommunityId> labels_;
    std::size_t community_count_ = 0;
};

/// One deterministic realisation: the sorted set of present edge indices.
class PossibleWorld {
public:
    PossibleWorld() = default;
    /// Indices are sorted; duplicates are rejected.
    explicit PossibleWorld(std::vector<EdgeIndex> present);

    static PossibleWorld from_mask(std::uint64_t mask, std::size_t edge_count);
    static PossibleWorld full(const ProbabilisticNetwork& net);

    std::span<const EdgeIndex> edges() const noexcept { return present_; }
    std::size_t size() const noexcept { return present_.size(); }
    bool empty() const noexcept { return present_.empty(); }
    bool contains(EdgeIndex i) const;

private:
    std::vector<EdgeIndex> present_;
};

/// Split of the edge set relative to one community c:
/// inside (both endpoints in c), crossing (exactly one) and outside (none).
struct EdgePartition {
    std::vector<EdgeIndex> inside;
    std::vector<EdgeIndex> crossing;
    std::vector<EdgeIndex> outside;

    std::size_t tx() const noexcept { return inside.size(); }
    std::size_t ty() const noexcept { return crossing.size(); }
    std::size_t tz() const noexcept { return outside.size(); }
};

/// Throws std::invalid_argument for sizes that do not match or an unknown c.
EdgePartition edge_partition(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                             CommunityId c);

/// prod_{e in w} p(e) * prod_{e not in w} (1 - p(e)).
double world_probability(const ProbabilisticNetwork& net, const PossibleWorld& world);

/// Same product for a world given as a bit mask over the first 64 edges.
double world_probability(const ProbabilisticNetwork& net, std::uint64_t mask);

struct WeightedWorld {
    PossibleWorld world;
    double probability;
};

/// Lazily yields all 2^m worlds in ascending bit-mask order. The returned
/// view refers to `net`, which must outlive it. Throws CapacityError when
/// m > cap (cap itself is clamped to 63).
inline auto enumerate_worlds(const ProbabilisticNetwork& net,
                             std::size_t cap = kDefaultEnumerationCap) {
    const std::size_t m = net.edge_count();
    if (m > cap || m > 63) throw CapacityError("world enumeration", m, cap < 63 ? cap : 63);
    const std::uint64_t count = std::uint64_t{1} << m;
    return std::views::iota(std::uint64_t{0}, count) |
           std::views::transform([&net, m](std::uint64_t mask) {
               return WeightedWorld{PossibleWorld::from_mask(mask, m), world_probability(net, mask)};
           });
}

/// Joint edge entropy in bits divided by m; 0 log 0 := 0. Requires m >= 1.
double entropy_ratio(const ProbabilisticNetwork& net);

/// Binary entropy H2(p) in bits.
double binary_entropy(double p);

/// Throws std::invalid_argument unless comm covers exactly the nodes of net.
void require_compatible(const ProbabilisticNetwork& net, const CommunityAssignment& comm);

}  // namespace expmod
