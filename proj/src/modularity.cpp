#include "expmod/modularity.hpp"

#include <Eigen/Dense>

namespace expmod {

namespace {

void require_world_fits(const ProbabilisticNetwork& net, const PossibleWorld& world) {
    if (!world.empty() && world.edges().back() >= net.edge_count())
        throw std::invalid_argument("world references an edge outside the network");
}

}  // namespace

double modularity_pairwise(const ProbabilisticNetwork& net, const PossibleWorld& world,
                           const CommunityAssignment& comm) {
    require_compatible(net, comm);
    require_world_fits(net, world);
    if (world.empty()) throw DegenerateInputError("modularity of a world without edges");

    const auto n = static_cast<Eigen::Index>(net.node_count());
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
    for (EdgeIndex i : world.edges()) {
        const Edge& e = net.edge(i);
        adjacency(e.u, e.v) = 1.0;
        adjacency(e.v, e.u) = 1.0;
    }
    Eigen::MatrixXd same(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            same(i, j) = comm[static_cast<NodeId>(i)] == comm[static_cast<NodeId>(j)] ? 1.0 : 0.0;

    const double two_m = 2.0 * static_cast<double>(world.size());
    const Eigen::VectorXd degree = adjacency.rowwise().sum();
    const Eigen::MatrixXd null_model = degree * degree.transpose() / two_m;
    return ((adjacency - null_model).array() * same.array()).sum() / two_m;
}

double modularity_by_community(const ProbabilisticNetwork& net, const PossibleWorld& world,
                               const CommunityAssignment& comm) {
    require_world_fits(net, world);
    ModularityAccumulator acc(net, comm);
    for (EdgeIndex i : world.edges()) acc.add(i);
    return acc.value();
}

double weighted_modularity(const ProbabilisticNetwork& net, const CommunityAssignment& comm) {
    require_compatible(net, comm);
    if (net.edge_count() == 0)
        throw DegenerateInputError("weighted modularity of a network without edges");
    std::vector<double> inside(comm.community_count(), 0.0);
    std::vector<double> strength(comm.community_count(), 0.0);
    double total = 0.0;
    for (const Edge& e : net.edges()) {
        total += e.p;
        strength[comm[e.u]] += e.p;
        strength[comm[e.v]] += e.p;
        if (comm[e.u] == comm[e.v]) inside[comm[e.u]] += e.p;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < inside.size(); ++c) {
        const double share = strength[c] / (2.0 * total);
        q += inside[c] / total - share * share;
    }
    return q;
}

ModularityAccumulator::ModularityAccumulator(const ProbabilisticNetwork& net,
                                             const CommunityAssignment& comm)
    : inside_(comm.community_count(), 0), degree_(comm.community_count(), 0) {
    require_compatible(net, comm);
    endpoint_u_.reserve(net.edge_count());
    endpoint_v_.reserve(net.edge_count());
    for (const Edge& e : net.edges()) {
        endpoint_u_.push_back(comm[e.u]);
        endpoint_v_.push_back(comm[e.v]);
    }
}

void ModularityAccumulator::reset() {
    std::fill(inside_.begin(), inside_.end(), 0);
    std::fill(degree_.begin(), degree_.end(), 0);
    edges_ = 0;
}

double ModularityAccumulator::value() const {
    if (edges_ == 0) throw DegenerateInputError("modularity of a world without edges");
    const double m = static_cast<double>(edges_);
    double q = 0.0;
    for (std::size_t c = 0; c < inside_.size(); ++c) {
        const double share = static_cast<double>(degree_[c]) / (2.0 * m);
        q += static_cast<double>(inside_[c]) / m - share * share;
    }
    return q;
}

}  // namespace expmod
