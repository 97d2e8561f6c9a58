#include "expmod/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "expmod/io.hpp"
#include "expmod/random.hpp"

namespace expmod::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::string real(double v) { return format_shortest(v); }
std::string value(double v) { return format_value(v); }

std::string seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

template <typename T>
std::string integer(T n) {
    return std::to_string(n);
}

// Forest-fire burning probability that lands near 600 edges on 200 nodes.
constexpr double kFfnBurn = 0.455;

struct SuiteInfo {
    std::string_view name;
    std::string summary;
    std::vector<Column> columns;
    Table (*run)(const Config&);
};

const std::vector<SuiteInfo>& registry();

Table empty_table(std::string_view name) {
    for (const auto& info : registry())
        if (info.name == name) return Table{std::string(name), info.summary, info.columns, {}};
    throw std::invalid_argument("unknown suite");
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i].name;
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

const std::vector<PlantedConfig>& accuracy_configs() {
    static const std::vector<PlantedConfig> configs = {
        {9, 3, 3, 0.8, 0.03},  {14, 3, 4, 0.8, 0.03}, {21, 3, 5, 0.6, 0.04},
        {25, 3, 6, 0.5, 0.03}, {35, 3, 7, 0.5, 0.03},
    };
    return configs;
}

SbmParams ccs_params(std::uint64_t seed) { return SbmParams{3, 9, 0.99, 0.01, seed}; }
SbmParams lccs_params(std::uint64_t seed) { return SbmParams{3, 9, 0.72, 0.12, seed}; }

Instance sbm_with_edge_count(SbmParams params, std::size_t target_edges,
                             const ProbabilityMode& mode, std::uint64_t seed,
                             std::size_t attempts) {
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        params.seed = substream_seed(seed, attempt);
        auto planted = gen_sbm(params);
        if (planted.topology.edge_count() != target_edges) continue;
        auto net = assign_probabilities(planted.topology, mode, mix_seed(params.seed));
        return Instance{std::move(net), std::move(planted.communities), params.seed};
    }
    throw std::runtime_error("no SBM draw with " + std::to_string(target_edges) + " edges in " +
                             std::to_string(attempts) + " attempts");
}

Topology topology_of(const ProbabilisticNetwork& net) {
    Topology t{net.node_count(), {}};
    for (const auto& e : net.edges()) t.edges.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    return t;
}

ProbabilisticNetwork with_probabilities(const Topology& topology, const ProbabilityMode& mode,
                                        std::uint64_t seed) {
    return assign_probabilities(topology, mode, seed);
}

double time_call(const std::function<void()>& fn, double budget_seconds, std::size_t max_repeats) {
    double best = INFINITY;
    double spent = 0.0;
    for (std::size_t rep = 0; rep < max_repeats && (rep == 0 || spent < budget_seconds); ++rep) {
        const auto start = Clock::now();
        fn();
        const double t = std::chrono::duration<double>(Clock::now() - start).count();
        best = std::min(best, t);
        spent += t;
    }
    return best;
}

std::vector<std::size_t> skewed_sizes(std::size_t n, std::size_t k, std::size_t small) {
    if (k < 1 || small < 1 || small * (k - 1) >= n)
        throw std::invalid_argument("skewed sizes need k >= 1 and (k - 1) * small < n");
    std::vector<std::size_t> sizes(k, small);
    sizes[0] = n - small * (k - 1);
    return sizes;
}

double size_variance(std::span<const std::size_t> sizes) {
    const double mean = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0})) /
                        static_cast<double>(sizes.size());
    double var = 0.0;
    for (auto s : sizes) var += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
    return var / static_cast<double>(sizes.size());
}

Table accuracy_suite(const Config& cfg) {
    Table table = empty_table("accuracy");
    const auto& configs = accuracy_configs();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& c = configs[i];
        const auto inst = sbm_with_edge_count(SbmParams{c.k, c.nc, c.p_in, c.p_out, 0}, c.m,
                                              UniformProbability{}, substream_seed(cfg.seed, i));
        const double q_pwp = pwp(inst.network, inst.communities, cfg.pwp_cap).value;
        const double q_fpwp = fpwp(inst.network, inst.communities).value;
        std::string q_bf, d_pwp, d_fpwp;
        if (c.m <= cfg.brute_force_cap) {
            const double bf = brute_force(inst.network, inst.communities, {cfg.brute_force_cap, 1}).value;
            q_bf = value(bf);
            d_pwp = real(std::abs(q_pwp - bf));
            d_fpwp = real(std::abs(q_fpwp - bf));
        }
        table.rows.push_back({integer(c.m), integer(c.k * c.nc), integer(c.k), integer(c.nc),
                              real(c.p_in), real(c.p_out), integer(inst.seed), value(q_pwp),
                              value(q_fpwp), q_bf, d_pwp, d_fpwp, real(std::abs(q_pwp - q_fpwp))});
    }
    return table;
}

Table runtime_suite(const Config& cfg) {
    Table table = empty_table("runtime");
    const auto& configs = accuracy_configs();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& c = configs[i];
        const auto inst = sbm_with_edge_count(SbmParams{c.k, c.nc, c.p_in, c.p_out, 0}, c.m,
                                              UniformProbability{}, substream_seed(cfg.seed, i));
        const auto& net = inst.network;
        const auto& comm = inst.communities;
        const double t_fpwp = time_call([&] { fpwp(net, comm); });
        const double t_pwp = time_call([&] { pwp(net, comm, cfg.pwp_cap); });
        std::string t_bf;
        if (c.m <= cfg.brute_force_cap)
            t_bf = seconds(time_call([&] { brute_force(net, comm, {cfg.brute_force_cap, 1}); }));
        table.rows.push_back({"sbm", integer(c.m), integer(c.k), seconds(t_pwp), seconds(t_fpwp), t_bf});
    }
    for (std::size_t m : {50, 100, 250, 500, 1000}) {
        const auto topo = gen_er_edges(200, m, substream_seed(cfg.seed, 100 + m));
        const auto net = assign_probabilities(topo, UniformProbability{}, substream_seed(cfg.seed, 200 + m));
        const auto comm = random_assignment(200, 5, substream_seed(cfg.seed, 300 + m));
        const double t_fpwp = time_call([&] { fpwp(net, comm); });
        table.rows.push_back({"er", integer(m), "5", "", seconds(t_fpwp), ""});
    }
    return table;
}

Table weighting_suite(const Config& cfg) {
    Table table = empty_table("weighting");
    const auto planted = gen_sbm(lccs_params(substream_seed(cfg.seed, 0)));
    for (int i = 1; i <= 10; ++i) {
        const double p = i / 10.0;
        const auto net = assign_probabilities(planted.topology, ConstantProbability{p}, 0);
        table.rows.push_back({real(p), integer(net.edge_count()),
                              value(weighting_estimate(net, planted.communities).value),
                              value(fpwp(net, planted.communities).value)});
    }
    return table;
}

Table thresholding_suite(const Config& cfg) {
    Table table = empty_table("thresholding");
    const auto inst = sbm_with_edge_count(lccs_params(0), 110, ConstantProbability{1.0},
                                          substream_seed(cfg.seed, 0));
    const auto topo = topology_of(inst.network);
    for (int r = 0; r <= 10; ++r) {
        const double ratio = r / 10.0;
        const auto net = assign_probabilities(topo, EntropyTarget{ratio}, 0);
        const double expected = fpwp(net, inst.communities).value;
        std::vector<double> qs;
        for (int t = 1; t <= 10; ++t) qs.push_back(threshold_estimate(net, inst.communities, t / 10.0).value);
        const double mean = mean_of(qs);
        double var = 0.0;
        for (double q : qs) var += (q - mean) * (q - mean);
        const auto [lo, hi] = std::minmax_element(qs.begin(), qs.end());
        table.rows.push_back({real(ratio), real(net.edge(0).p), value(expected), value(mean),
                              value(std::sqrt(var / static_cast<double>(qs.size()))), value(*lo),
                              value(*hi)});
    }
    return table;
}

Table sampling_convergence_suite(const Config& cfg) {
    Table table = empty_table("sampling-convergence");
    constexpr std::size_t kSeeds = 20;
    const std::uint64_t thetas[] = {10, 30, 100, 300, 1000, 3000, 10000};
    const std::pair<const char*, SbmParams> networks[] = {
        {"ccs", ccs_params(substream_seed(cfg.seed, 1))},
        {"lccs", lccs_params(substream_seed(cfg.seed, 2))},
    };
    for (const auto& [name, params] : networks) {
        const auto planted = gen_sbm(params);
        for (double ratio : {1.0, 0.47, 0.0}) {
            const auto net = assign_probabilities(planted.topology, EntropyTarget{ratio}, 0);
            const auto exact = fpwp(net, planted.communities);
            const double t_fpwp = time_call([&] { fpwp(net, planted.communities); });
            for (auto theta : thetas)
                for (std::size_t s = 0; s < kSeeds; ++s) {
                    const auto est = sample_estimate(net, planted.communities, theta,
                                                     substream_seed(cfg.seed, 1000 + s));
                    table.rows.push_back({name, real(ratio), integer(theta), integer(*est.seed),
                                          value(est.value), real(est.standard_error.value_or(0.0)),
                                          seconds(est.elapsed_seconds), value(exact.value),
                                          seconds(t_fpwp)});
                }
        }
    }
    return table;
}

Table communities_suite(const Config& cfg) {
    Table table = empty_table("communities");
    const auto topo = gen_er_edges(100, 500, substream_seed(cfg.seed, 0));
    const auto net = assign_probabilities(topo, UniformProbability{}, substream_seed(cfg.seed, 1));
    for (std::size_t k = 3; k <= 20; ++k) {
        const auto comm = random_assignment(100, k, substream_seed(cfg.seed, 100 + k));
        double q = 0.0;
        const double t = time_call([&] { q = fpwp(net, comm).value; }, 0.2);
        const auto sizes = comm.sizes();
        table.rows.push_back({integer(k), integer(net.edge_count()), integer(net.node_count()),
                              real(size_variance(sizes)), seconds(t), value(q)});
    }
    return table;
}

Table variance_suite(const Config& cfg) {
    Table table = empty_table("variance");
    const auto topo = gen_er_edges(100, 500, substream_seed(cfg.seed, 0));
    const auto net = assign_probabilities(topo, UniformProbability{}, substream_seed(cfg.seed, 1));
    for (std::size_t small : {20, 18, 16, 14, 12, 10, 8, 6, 4, 2, 1}) {
        const auto sizes = skewed_sizes(100, 5, small);
        const auto comm = assignment_with_sizes(sizes, substream_seed(cfg.seed, 100 + small));
        double q = 0.0;
        const double t = time_call([&] { q = fpwp(net, comm).value; }, 0.2);
        std::string joined;
        for (auto s : sizes) joined += (joined.empty() ? "" : ";") + integer(s);
        table.rows.push_back({joined, real(size_variance(sizes)), "5", seconds(t), value(q)});
    }
    return table;
}

Table models_suite(const Config& cfg) {
    Table table = empty_table("models");
    for (std::size_t k : {4, 5, 6}) {
        const std::uint64_t base = substream_seed(cfg.seed, k);
        std::vector<std::pair<std::string, std::pair<Topology, CommunityAssignment>>> cases;
        auto blocks = [&](Topology t) {
            auto comm = block_assignment(t.node_count, k);
            return std::pair{std::move(t), std::move(comm)};
        };
        {
            // Forest-fire edge counts are heavy-tailed; redraw until within 10% of 600.
            Topology ffn;
            for (std::uint64_t attempt = 0;; ++attempt) {
                ffn = gen_ffn(200, kFfnBurn, substream_seed(substream_seed(base, 0), attempt));
                if (ffn.edge_count() >= 540 && ffn.edge_count() <= 660) break;
            }
            cases.emplace_back("ffn", blocks(std::move(ffn)));
        }
        cases.emplace_back("ba", blocks(gen_ba(200, 3, substream_seed(base, 1))));
        cases.emplace_back("sw", blocks(gen_ws(200, 6, 0.1, substream_seed(base, 2))));
        cases.emplace_back("er", blocks(gen_er_edges(200, 600, substream_seed(base, 3))));
        {
            const std::size_t nc = 200 / k;
            const double in_pairs = static_cast<double>(k * nc * (nc - 1) / 2);
            const double all_pairs = static_cast<double>(k * nc * (k * nc - 1) / 2);
            SbmParams params{k, nc, 570.0 / in_pairs, 30.0 / (all_pairs - in_pairs), substream_seed(base, 4)};
            auto planted = gen_sbm(params);
            cases.emplace_back("ccs", std::pair{std::move(planted.topology), std::move(planted.communities)});
        }
        for (const auto& [name, tc] : cases) {
            const auto& [topo, comm] = tc;
            const auto net = assign_probabilities(topo, EntropyTarget{0.4}, 0);
            double q = 0.0;
            const double t = time_call([&] { q = fpwp(net, comm).value; }, 0.2);
            const auto sizes = comm.sizes();
            table.rows.push_back({name, integer(net.node_count()), integer(net.edge_count()),
                                  integer(k), real(size_variance(sizes)), seconds(t), value(q)});
        }
    }
    return table;
}

namespace {

const std::vector<SuiteInfo>& registry() {
    static const std::vector<SuiteInfo> suites = {
        {"accuracy",
         "Exact methods on planted-partition networks with m = 9..35 edges and uniform random "
         "probabilities. Brute force is skipped above its cap.",
         {{"m", "edge count"},
          {"n", "node count"},
          {"k", "communities"},
          {"nc", "nodes per community"},
          {"p_in", "within-community density"},
          {"p_out", "between-community density"},
          {"topology_seed", "SBM seed that produced exactly m edges"},
          {"Q_pwp", "expected modularity, PWP"},
          {"Q_fpwp", "expected modularity, FPWP"},
          {"Q_bf", "expected modularity, brute force (blank above cap)"},
          {"abs_pwp_bf", "|Q_pwp - Q_bf|"},
          {"abs_fpwp_bf", "|Q_fpwp - Q_bf|"},
          {"abs_pwp_fpwp", "|Q_pwp - Q_fpwp|"}},
         &accuracy_suite},
        {"runtime",
         "Wall time of the exact methods on the accuracy instances, plus FPWP alone on G(n=200, m) "
         "with five random communities. Times are the minimum over repeated calls.",
         {{"model", "sbm (accuracy instances) or er"},
          {"m", "edge count"},
          {"k", "communities"},
          {"T_pwp", "seconds, PWP"},
          {"T_fpwp", "seconds, FPWP"},
          {"T_bf", "seconds, brute force (blank above cap)"}},
         &runtime_suite},
        {"weighting",
         "One LCCS topology (k=3, nc=9, p_in=0.72, p_out=0.12) with every edge probability set "
         "to p.",
         {{"p", "common edge probability"},
          {"m", "edge count"},
          {"Q_weighted", "weighted modularity with w = p"},
          {"Q_fpwp", "expected modularity"}},
         &weighting_suite},
        {"thresholding",
         "LCCS topology with 110 edges; all edges get the probability whose entropy ratio is the "
         "row's target; thresholds 0.1, 0.2, ..., 1.0.",
         {{"entropy_ratio", "target entropy ratio"},
          {"p", "edge probability realising it"},
          {"Q_fpwp", "expected modularity"},
          {"threshold_mean", "mean modularity over the ten thresholds"},
          {"threshold_sd", "population standard deviation over the thresholds"},
          {"threshold_min", "smallest thresholded modularity"},
          {"threshold_max", "largest thresholded modularity"}},
         &thresholding_suite},
        {"sampling-convergence",
         "Sampling estimates on CCS (p_in=0.99, p_out=0.01) and LCCS topologies at entropy ratios "
         "1.0, 0.47 and 0.0; 20 seeds per sample count.",
         {{"network", "ccs or lccs"},
          {"entropy_ratio", "entropy ratio of the probabilities"},
          {"theta", "number of sampled worlds"},
          {"seed", "sampling seed"},
          {"Q_sampling", "sampling estimate"},
          {"standard_error", "sample standard deviation / sqrt(theta)"},
          {"T_sampling", "seconds, sampling"},
          {"Q_fpwp", "expected modularity"},
          {"T_fpwp", "seconds, FPWP"}},
         &sampling_convergence_suite},
        {"communities",
         "FPWP on a fixed G(100, 500) network with uniform random probabilities and k random "
         "communities.",
         {{"k", "communities"},
          {"m", "edge count"},
          {"n", "node count"},
          {"size_variance", "population variance of the community sizes"},
          {"T_fpwp", "seconds, FPWP"},
          {"Q_fpwp", "expected modularity"}},
         &communities_suite},
        {"variance",
         "FPWP on the G(100, 500) network with five communities of increasingly unequal sizes.",
         {{"sizes", "community sizes, ';'-separated"},
          {"size_variance", "population variance of the sizes"},
          {"k", "communities"},
          {"T_fpwp", "seconds, FPWP"},
          {"Q_fpwp", "expected modularity"}},
         &variance_suite},
        {"models",
         "FPWP on forest-fire, Barabasi-Albert, small-world, Erdos-Renyi and clear-community SBM "
         "networks of about 200 nodes and 600 edges, entropy ratio 0.4. Communities are planted "
         "for the SBM and contiguous id blocks otherwise.",
         {{"model", "ffn, ba, sw, er or ccs"},
          {"n", "node count"},
          {"m", "edge count"},
          {"k", "communities"},
          {"size_variance", "population variance of the community sizes"},
          {"T_fpwp", "seconds, FPWP"},
          {"Q_fpwp", "expected modularity"}},
         &models_suite},
    };
    return suites;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> out;
        for (const auto& s : registry()) out.push_back(s.name);
        return out;
    }();
    return names;
}

Table run_suite(std::string_view name, const Config& cfg) {
    for (const auto& s : registry())
        if (s.name == name) return s.run(cfg);
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::string suites_readme() {
    std::ostringstream os;
    os << "# Benchmark output\n\n"
       << "Each suite writes `<suite>.csv`. Rows are deterministic for a fixed `--seed` except "
          "for timing columns. `host.txt` records the machine the timings come from.\n";
    for (const auto& s : registry()) {
        os << "\n## " << s.name << "\n\n" << s.summary << "\n\n| column | meaning |\n|---|---|\n";
        for (const auto& c : s.columns) os << "| " << c.name << " | " << c.description << " |\n";
    }
    return os.str();
}

std::string host_metadata() {
    char host[256] = {};
    gethostname(host, sizeof host - 1);
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ostringstream os;
    os << "host: " << host << '\n'
       << "hardware_threads: " << std::thread::hardware_concurrency() << '\n'
#if defined(__clang__)
       << "compiler: clang " << __clang_version__ << '\n'
#elif defined(__GNUC__)
       << "compiler: gcc " << __VERSION__ << '\n'
#else
       << "compiler: unknown\n"
#endif
       << "timestamp: " << stamp << '\n';
    return os.str();
}

}  // namespace expmod::bench
