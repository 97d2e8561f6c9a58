#pragma once

#include <vector>

#include "expmod/network.hpp"

namespace expmod {

/// Newman modularity of a deterministic world, evaluated literally as
/// (1/2M) sum_ij (A_ij - k_i k_j / 2M) delta(x_i, x_j) on a dense adjacency
/// matrix. O(n^2); intended for small graphs and as a reference.
/// Throws DegenerateInputError for a world without edges.
double modularity_pairwise(const ProbabilisticNetwork& net, const PossibleWorld& world,
                           const CommunityAssignment& comm);

/// Modularity through per-community edge counts:
/// sum_c |e_c|/M - ((2|e_c| + |e_{c,~c}|) / 2M)^2. O(m + k).
/// Throws DegenerateInputError for a world without edges.
double modularity_by_community(const ProbabilisticNetwork& net, const PossibleWorld& world,
                               const CommunityAssignment& comm);

/// Modularity with w_ij = p_ij and node strengths in place of degrees.
double weighted_modularity(const ProbabilisticNetwork& net, const CommunityAssignment& comm);

/// Incremental modularity of many worlds over one (network, assignment) pair.
/// add() the present edges, read value(), reset() for the next world.
class ModularityAccumulator {
public:
    ModularityAccumulator(const ProbabilisticNetwork& net, const CommunityAssignment& comm);

    void reset();
    void add(EdgeIndex i) {
        const auto cu = endpoint_u_[i];
        const auto cv = endpoint_v_[i];
        ++edges_;
        ++degree_[cu];
        ++degree_[cv];
        if (cu == cv) ++inside_[cu];
    }

    std::size_t edge_count() const noexcept { return edges_; }
    bool empty() const noexcept { return edges_ == 0; }
    /// Throws DegenerateInputError when no edge was added.
    double value() const;

private:
    std::vector<CommunityId> endpoint_u_;
    std::vector<CommunityId> endpoint_v_;
    std::vector<std::size_t> inside_;
    std::vector<std::size_t> degree_;
    std::size_t edges_ = 0;
};

}  // namespace expmod
