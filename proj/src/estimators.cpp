#include "expmod/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "expmod/modularity.hpp"
#include "expmod/random.hpp"

namespace expmod {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Runs fn(chunk) for every chunk in [0, chunks). Each chunk writes its own
// slot, so callers reduce in chunk order regardless of the thread count.
template <typename Fn>
void for_each_chunk(std::size_t chunks, unsigned threads, Fn&& fn) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (threads == 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) fn(c);
        });
    for (auto& th : pool) th.join();
}

// Welford accumulator, merged with Chan's update.
struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double total = static_cast<double>(count + other.count);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(count) *
                             static_cast<double>(other.count) / total;
        count += other.count;
    }
};

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::brute_force: return "brute_force";
        case Method::sampling: return "sampling";
        case Method::thresholding: return "thresholding";
        case Method::weighting: return "weighting";
        case Method::pwp: return "pwp";
        case Method::fpwp: return "fpwp";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "brute_force" || name == "bruteforce" || name == "bf") return Method::brute_force;
    if (name == "sampling") return Method::sampling;
    if (name == "thresholding") return Method::thresholding;
    if (name == "weighting") return Method::weighting;
    if (name == "pwp") return Method::pwp;
    if (name == "fpwp") return Method::fpwp;
    return std::nullopt;
}

Estimate brute_force(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                     const ExactOptions& options) {
    const auto start = Clock::now();
    require_compatible(net, comm);
    const std::size_t m = net.edge_count();
    const std::size_t cap = std::min<std::size_t>(options.cap, 62);
    if (m > cap) throw CapacityError("brute force", m, options.cap);

    std::vector<double> present(m), absent(m);
    for (std::size_t i = 0; i < m; ++i) {
        present[i] = net.edge(i).p;
        absent[i] = 1.0 - present[i];
    }

    const std::uint64_t worlds = std::uint64_t{1} << m;
    const std::uint64_t chunk_size = std::max<std::uint64_t>(1, worlds / 256);
    const std::size_t chunks = static_cast<std::size_t>((worlds + chunk_size - 1) / chunk_size);
    std::vector<double> partial(chunks, 0.0);

    for_each_chunk(chunks, options.threads, [&](std::size_t chunk) {
        ModularityAccumulator acc(net, comm);
        const std::uint64_t lo = chunk * chunk_size;
        const std::uint64_t hi = std::min(worlds, lo + chunk_size);
        double sum = 0.0;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            acc.reset();
            double prob = 1.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask >> i & 1U) {
                    prob *= present[i];
                    acc.add(i);
                } else {
                    prob *= absent[i];
                }
            }
            if (!acc.empty()) sum += prob * acc.value();
        }
        partial[chunk] = sum;
    });

    double value = 0.0;
    for (double s : partial) value += s;
    Estimate est{Method::brute_force, value, seconds_since(start), {}, {}, {}};
    est.params["cap"] = std::to_string(options.cap);
    return est;
}

Estimate sample_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                         std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    const auto start = Clock::now();
    require_compatible(net, comm);
    if (samples == 0) throw std::invalid_argument("sampling needs at least one sample");

    const std::size_t m = net.edge_count();
    std::vector<double> prob(m);
    for (std::size_t i = 0; i < m; ++i) prob[i] = net.edge(i).p;

    constexpr std::uint64_t kChunk = 4096;
    const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
    std::vector<Moments> partial(chunks);

    for_each_chunk(chunks, threads, [&](std::size_t chunk) {
        ModularityAccumulator acc(net, comm);
        const std::uint64_t lo = chunk * kChunk;
        const std::uint64_t hi = std::min(samples, lo + kChunk);
        Moments moments;
        for (std::uint64_t t = lo; t < hi; ++t) {
            SplitMix64 stream(substream_seed(seed, t));
            acc.reset();
            for (std::size_t i = 0; i < m; ++i)
                if (stream.uniform() <= prob[i]) acc.add(i);
            moments.add(acc.empty() ? 0.0 : acc.value());
        }
        partial[chunk] = moments;
    });

    Moments total;
    for (const auto& part : partial) total.merge(part);

    Estimate est{Method::sampling, total.mean, 0.0, {}, {}, seed};
    if (samples > 1) {
        const double variance = total.m2 / static_cast<double>(samples - 1);
        est.standard_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(samples));
    }
    est.params["samples"] = std::to_string(samples);
    est.params["seed"] = std::to_string(seed);
    est.elapsed_seconds = seconds_since(start);
    return est;
}

Estimate threshold_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                            double tau) {
    const auto start = Clock::now();
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
    ModularityAccumulator acc(net, comm);
    const auto edges = net.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].p >= tau) acc.add(i);
    const double value = acc.empty() ? 0.0 : acc.value();
    Estimate est{Method::thresholding, value, seconds_since(start), {}, {}, {}};
    est.params["threshold"] = format_real(tau);
    return est;
}

Estimate weighting_estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm) {
    const auto start = Clock::now();
    const double value = weighted_modularity(net, comm);
    return Estimate{Method::weighting, value, seconds_since(start), {}, {}, {}};
}

double q_cxyz(std::size_t x, std::size_t y, std::size_t z) {
    const std::size_t total = x + y + z;
    if (total == 0) return 0.0;
    const double m = static_cast<double>(total);
    const double share = static_cast<double>(2 * x + y) / (2.0 * m);
    return static_cast<double>(x) / m - share * share;
}

double partition_probability(const Pmf& pmf_x, const Pmf& pmf_y, const Pmf& pmf_z,
                             std::size_t x, std::size_t y, std::size_t z) {
    if (x >= static_cast<std::size_t>(pmf_x.size()) ||
        y >= static_cast<std::size_t>(pmf_y.size()) ||
        z >= static_cast<std::size_t>(pmf_z.size()))
        throw std::invalid_argument("partition index outside the PMF support");
    return pmf_x[static_cast<Eigen::Index>(x)] * pmf_y[static_cast<Eigen::Index>(y)] *
           pmf_z[static_cast<Eigen::Index>(z)];
}

CommunityPmfs community_pmfs(const ProbabilisticNetwork& net, const EdgePartition& part,
                             PmfRoute route, std::size_t cap) {
    auto pmf_of = [&](const std::vector<EdgeIndex>& set) -> Pmf {
        const Eigen::VectorXd ps = net.probabilities(set);
        return route == PmfRoute::enumeration ? pb_pmf_enumeration(ps, cap) : pb_pmf_dft(ps);
    };
    return CommunityPmfs{pmf_of(part.inside), pmf_of(part.crossing), pmf_of(part.outside)};
}

double community_contribution(const CommunityPmfs& pmfs) {
    const auto tx = static_cast<std::size_t>(pmfs.inside.size());
    const auto ty = static_cast<std::size_t>(pmfs.crossing.size());
    const auto tz = static_cast<std::size_t>(pmfs.outside.size());
    const double* px = pmfs.inside.data();
    const double* py = pmfs.crossing.data();
    const double* pz = pmfs.outside.data();
    // q_cxyz(x, y, z) = x / M - ((2x + y) / 2M)^2 with M = x + y + z; the
    // reciprocals of M are tabulated once so the inner loop is division-free.
    std::vector<double> inv(tx + ty + tz, 0.0);
    for (std::size_t mm = 1; mm < inv.size(); ++mm) inv[mm] = 1.0 / static_cast<double>(mm);
    double sum = 0.0;
    for (std::size_t x = 0; x < tx; ++x)
        for (std::size_t y = 0; y < ty; ++y) {
            const double pxy = px[x] * py[y];
            if (pxy == 0.0) continue;
            const double fx = static_cast<double>(x);
            const double half = fx + 0.5 * static_cast<double>(y);
            const double* r = inv.data() + x + y;
            double inner = 0.0;
            for (std::size_t z = 0; z < tz; ++z) {
                const double share = half * r[z];
                inner += (fx * r[z] - share * share) * pz[z];
            }
            sum += pxy * inner;
        }
    return sum;
}

namespace {

Estimate partitioned(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                     Method method, PmfRoute route, std::size_t cap) {
    const auto start = Clock::now();
    require_compatible(net, comm);
    std::vector<EdgePartition> parts;
    parts.reserve(comm.community_count());
    for (CommunityId c = 0; c < comm.community_count(); ++c) {
        parts.push_back(edge_partition(net, comm, c));
        if (route == PmfRoute::enumeration) {
            const auto& p = parts.back();
            const std::size_t largest = std::max({p.tx(), p.ty(), p.tz()});
            if (largest > cap)
                throw CapacityError("PWP community " + std::to_string(c), largest, cap);
        }
    }
    double value = 0.0;
    for (const auto& part : parts) value += community_contribution(community_pmfs(net, part, route, cap));
    return Estimate{method, value, seconds_since(start), {}, {}, {}};
}

}  // namespace

Estimate pwp(const ProbabilisticNetwork& net, const CommunityAssignment& comm, std::size_t cap) {
    Estimate est = partitioned(net, comm, Method::pwp, PmfRoute::enumeration, cap);
    est.params["cap"] = std::to_string(cap);
    return est;
}

Estimate fpwp(const ProbabilisticNetwork& net, const CommunityAssignment& comm) {
    return partitioned(net, comm, Method::fpwp, PmfRoute::dft, 0);
}

Estimate estimate(const ProbabilisticNetwork& net, const CommunityAssignment& comm,
                  const EstimateRequest& request) {
    switch (request.method) {
        case Method::brute_force: return brute_force(net, comm, request.exact);
        case Method::sampling:
            if (!request.samples) throw std::invalid_argument("sampling requires a sample count");
            return sample_estimate(net, comm, *request.samples, request.seed, request.exact.threads);
        case Method::thresholding:
            if (!request.threshold) throw std::invalid_argument("thresholding requires a threshold");
            return threshold_estimate(net, comm, *request.threshold);
        case Method::weighting: return weighting_estimate(net, comm);
        case Method::pwp: return pwp(net, comm, request.exact.cap);
        case Method::fpwp: return fpwp(net, comm);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace expmod
