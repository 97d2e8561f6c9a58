#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "expmod/network.hpp"
#include "expmod/poisson_binomial.hpp"

namespace expmod {

enum class Method { brute_force, sampling, thresholding, weighting, pwp, fpwp };

std::string_view to_string(Method method);
/// Accepts the canonical names plus "bruteforce" and "bf".
std::optional<Method> parse_method(std::string_view name);

/// Result of one estimator invocation.
struct Estimate {
    Method method;
    double value = 0.0;
    double elapsed_seconds = 0.0;
    std::map<std::string, std::string> params;
    /// Sampling only: sample standard deviation / sqrt(samples), when samples > 1.
    std::optional<double> standard_error;
    std::optional<std::uint64_t> seed;
};

struct ExactOptions {
    std::size_t cap = kDefaultEnumerationCap;
    /// Worker threads for brute force. The result does not depend on it.
    unsigned threads = 1;
};

/// Exact expected modularity by visiting all 2^m worlds. The empty world
/// contributes Q = 0. Throws CapacityError when m > cap.
Estimate brute_force(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                     const ExactOptions& options = {});

/// Monte Carlo average over `samples` worlds, each edge kept when a uniform
/// draw r satisfies r <= p. Sample t uses substream t of `seed`, so the value
/// is independent of `threads`. Throws std::invalid_argument for samples == 0.
Estimate sample_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                         std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

/// Modularity of the deterministic graph keeping edges with p >= tau
/// (0 when nothing survives). tau must lie in [0, 1].
Estimate threshold_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                            double tau);

/// Weighted modularity with the probabilities as weights.
Estimate weighting_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm);

/// Modularity contribution of a community whose world has x inside,
/// y crossing and z outside edges; 0 for the empty world.
double q_cxyz(std::size_t x, std::size_t y, std::size_t z);

/// pmf_x[x] * pmf_y[y] * pmf_z[z]; throws std::invalid_argument on a bad index.
double partition_probability(const Pmf& pmf_x, const Pmf& pmf_y, const Pmf& pmf_z,
                             std::size_t x, std::size_t y, std::size_t z);

enum class PmfRoute { enumeration, dft };

/// Edge-count distributions of the three edge sets of one community.
struct CommunityPmfs {
    Pmf inside;
    Pmf crossing;
    Pmf outside;
};

CommunityPmfs community_pmfs(const ProbabilisticNetwork& net, const EdgePartition& part,
                             PmfRoute route, std::size_t cap = kDefaultEnumerationCap);

/// sum_{x,y,z} q_cxyz(x, y, z) * Pr(d^{xyz}) for one community.
double community_contribution(const CommunityPmfs& pmfs);

/// Possible-world partitioning with exhaustive subset PMFs.
/// Throws CapacityError when a community's largest edge set exceeds cap.
Estimate pwp(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
             std::size_t cap = kDefaultEnumerationCap);

/// Possible-world partitioning with DFT closed-form PMFs. O(k m^3).
Estimate fpwp(const ProbabilisticNetwork& net, const CommunityAssignment& comm);

/// Dispatch by method. `samples`, `threshold` and `seed` are read only by the
/// methods that need them.
struct EstimateRequest {
    Method method = Method::fpwp;
    std::optional<std::uint64_t> samples;
    std::optional<double> threshold;
    std::uint64_t seed = 0;
    ExactOptions exact;
};

Estimate estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                  const EstimateRequest& request);

}  // namespace expmod
