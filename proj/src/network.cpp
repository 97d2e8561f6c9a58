#include "expmod/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace expmod {

ProbabilisticNetwork::ProbabilisticNetwork(std::size_t node_count, std::vector<Edge> edges,
                                           std::vector<std::string> node_labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(node_labels)) {
    if (!labels_.empty() && labels_.size() != node_count_)
        throw std::invalid_argument("label count does not match node count");

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        const std::string where = "edge " + std::to_string(i);
        if (e.u >= node_count_ || e.v >= node_count_)
            throw std::invalid_argument(where + ": endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument(where + ": self-loop");
        if (!(e.p > 0.0 && e.p <= 1.0))
            throw std::invalid_argument(where + ": probability must lie in (0, 1]");
        const auto lo = std::min(e.u, e.v);
        const auto hi = std::max(e.u, e.v);
        if (!seen.insert((std::uint64_t{lo} << 32) | hi).second)
            throw std::invalid_argument(where + ": duplicate edge");
    }
}

Eigen::VectorXd ProbabilisticNetwork::probabilities() const {
    Eigen::VectorXd p(static_cast<Eigen::Index>(edges_.size()));
    for (std::size_t i = 0; i < edges_.size(); ++i) p[static_cast<Eigen::Index>(i)] = edges_[i].p;
    return p;
}

Eigen::VectorXd ProbabilisticNetwork::probabilities(std::span<const EdgeIndex> subset) const {
    Eigen::VectorXd p(static_cast<Eigen::Index>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i)
        p[static_cast<Eigen::Index>(i)] = edges_.at(subset[i]).p;
    return p;
}

std::string ProbabilisticNetwork::label(NodeId v) const {
    if (labels_.empty()) return std::to_string(v);
    return labels_.at(v);
}

CommunityAssignment::CommunityAssignment(std::vector<CommunityId> labels)
    : labels_(std::move(labels)) {
    if (labels_.empty()) return;
    community_count_ = static_cast<std::size_t>(*std::max_element(labels_.begin(), labels_.end())) + 1;
    std::vector<bool> used(community_count_, false);
    for (auto c : labels_) used[c] = true;
    for (std::size_t c = 0; c < community_count_; ++c)
        if (!used[c])
            throw std::invalid_argument("community id " + std::to_string(c) + " has no members");
}

CommunityAssignment CommunityAssignment::compact(std::span<const std::int64_t> raw) {
    std::map<std::int64_t, CommunityId> dense;
    for (auto r : raw) dense.emplace(r, 0);
    CommunityId next = 0;
    for (auto& [_, id] : dense) id = next++;
    std::vector<CommunityId> labels;
    labels.reserve(raw.size());
    for (auto r : raw) labels.push_back(dense[r]);
    return CommunityAssignment(std::move(labels));
}

CommunityAssignment CommunityAssignment::single(std::size_t node_count) {
    return CommunityAssignment(std::vector<CommunityId>(node_count, 0));
}

std::vector<NodeId> CommunityAssignment::members(CommunityId c) const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < labels_.size(); ++v)
        if (labels_[v] == c) out.push_back(static_cast<NodeId>(v));
    return out;
}

std::vector<std::size_t> CommunityAssignment::sizes() const {
    std::vector<std::size_t> out(community_count_, 0);
    for (auto c : labels_) ++out[c];
    return out;
}

PossibleWorld::PossibleWorld(std::vector<EdgeIndex> present) : present_(std::move(present)) {
    std::sort(present_.begin(), present_.end());
    if (std::adjacent_find(present_.begin(), present_.end()) != present_.end())
        throw std::invalid_argument("possible world lists an edge twice");
}

PossibleWorld PossibleWorld::from_mask(std::uint64_t mask, std::size_t edge_count) {
    PossibleWorld w;
    for (std::size_t i = 0; i < edge_count && i < 64; ++i)
        if (mask >> i & 1U) w.present_.push_back(i);
    return w;
}

PossibleWorld PossibleWorld::full(const ProbabilisticNetwork& net) {
    PossibleWorld w;
    w.present_.resize(net.edge_count());
    for (std::size_t i = 0; i < w.present_.size(); ++i) w.present_[i] = i;
    return w;
}

bool PossibleWorld::contains(EdgeIndex i) const {
    return std::binary_search(present_.begin(), present_.end(), i);
}

void require_compatible(const ProbabilisticNetwork& net, const CommunityAssignment& comm) {
    if (comm.node_count() != net.node_count())
        throw std::invalid_argument("community assignment covers " +
                                    std::to_string(comm.node_count()) + " nodes, network has " +
                                    std::to_string(net.node_count()));
}

EdgePartition edge_partition(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                             CommunityId c) {
    require_compatible(net, comm);
    if (c >= comm.community_count())
        throw std::invalid_argument("unknown community id " + std::to_string(c));
    EdgePartition part;
    const auto edges = net.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const int ends = (comm[edges[i].u] == c) + (comm[edges[i].v] == c);
        if (ends == 2)
            part.inside.push_back(i);
        else if (ends == 1)
            part.crossing.push_back(i);
        else
            part.outside.push_back(i);
    }
    return part;
}

double world_probability(const ProbabilisticNetwork& net, const PossibleWorld& world) {
    const auto edges = net.edges();
    const auto present = world.edges();
    if (!present.empty() && present.back() >= edges.size())
        throw std::invalid_argument("world references edge " + std::to_string(present.back()) +
                                    " of a network with " + std::to_string(edges.size()) +
                                    " edges");
    double prob = 1.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (next < present.size() && present[next] == i) {
            prob *= edges[i].p;
            ++next;
        } else {
            prob *= 1.0 - edges[i].p;
        }
    }
    return prob;
}

double world_probability(const ProbabilisticNetwork& net, std::uint64_t mask) {
    const auto edges = net.edges();
    if (edges.size() > 64 || (edges.size() < 64 && (mask >> edges.size()) != 0))
        throw std::invalid_argument("mask does not fit the network's edge count");
    double prob = 1.0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        prob *= (mask >> i & 1U) ? edges[i].p : 1.0 - edges[i].p;
    return prob;
}

double binary_entropy(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

double entropy_ratio(const ProbabilisticNetwork& net) {
    if (net.edge_count() == 0)
        throw std::invalid_argument("entropy ratio is undefined for a network without edges");
    double h = 0.0;
    for (const auto& e : net.edges()) h += binary_entropy(e.p);
    return h / static_cast<double>(net.edge_count());
}

}  // namespace expmod
