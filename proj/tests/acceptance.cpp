// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
// Exits non-zero when any criterion fails, unless the failing set is exactly
// the one named by --expect-fail=ID,ID,... (an expected failure that passes
// is also reported as an error).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "expmod/bench.hpp"
#include "expmod/estimators.hpp"
#include "expmod/generators.hpp"
#include "expmod/modularity.hpp"
#include "expmod/poisson_binomial.hpp"
#include "expmod/random.hpp"

using namespace expmod;
using bench::time_call;

namespace {

constexpr std::uint64_t kRoot = 1;
std::set<int> failed;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) failed.insert(id);
}

std::set<int> parse_expected(int argc, char** argv) {
    std::set<int> ids;
    const std::string flag = "--expect-fail=";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind(flag, 0) != 0) continue;
        std::size_t pos = flag.size();
        while (pos < arg.size()) {
            const auto comma = arg.find(',', pos);
            ids.insert(std::stoi(arg.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return ids;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bench::Instance accuracy_instance(std::size_t i) {
    const auto& c = bench::accuracy_configs()[i];
    return bench::sbm_with_edge_count(SbmParams{c.k, c.nc, c.p_in, c.p_out, 0}, c.m, UniformProbability{},
                                      substream_seed(kRoot, i));
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = 0.5 * static_cast<double>(i + j);
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks(a), rb = ranks(b);
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / static_cast<double>(ra.size());
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / static_cast<double>(rb.size());
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

void exactness() {
    double worst_pwp = 0, worst_fpwp = 0;
    std::string table;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto inst = accuracy_instance(i);
        const double bf = brute_force(inst.network, inst.communities).value;
        const double p = pwp(inst.network, inst.communities).value;
        const double f = fpwp(inst.network, inst.communities).value;
        worst_pwp = std::max(worst_pwp, std::abs(p - bf));
        worst_fpwp = std::max(worst_fpwp, std::abs(f - bf));
        char buf[128];
        std::snprintf(buf, sizeof buf, "m=%zu %.4f/%.4f/%.4f ", inst.network.edge_count(), bf, p, f);
        table += buf;
    }
    report(1, worst_pwp < 1e-9 && worst_fpwp < 1e-9, "PWP and FPWP equal brute force for m <= 25",
           table + fmt("max|PWP-BF|=%.2e ", worst_pwp) + fmt("max|FPWP-BF|=%.2e", worst_fpwp));
}

void beyond_brute_force() {
    const auto inst = accuracy_instance(4);
    const double p = pwp(inst.network, inst.communities, 30).value;
    const double f = fpwp(inst.network, inst.communities).value;
    report(2, std::abs(p - f) < 1e-9, "PWP equals FPWP at m = 35",
           fmt("PWP=%.10f ", p) + fmt("FPWP=%.10f ", f) + fmt("diff=%.2e", std::abs(p - f)));
}

void runtime_ordering() {
    bool ok = true;
    std::string detail;
    double ratio21 = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto inst = accuracy_instance(i);
        const auto& net = inst.network;
        const auto& comm = inst.communities;
        const double tf = time_call([&] { fpwp(net, comm); }, 0.5, 200000);
        const double tp = time_call([&] { pwp(net, comm); }, 0.5, 200000);
        const double tb = time_call([&] { brute_force(net, comm); }, 0.5, 1000);
        ok = ok && tf < tp && tp < tb;
        if (net.edge_count() == 21) ratio21 = tb / tf;
        char buf[160];
        std::snprintf(buf, sizeof buf, "m=%zu F=%.3gs P=%.3gs B=%.3gs; ", net.edge_count(), tf, tp, tb);
        detail += buf;
    }
    ok = ok && ratio21 > 1e3;
    report(3, ok, "FPWP < PWP < BF on every row, BF/FPWP > 1e3 at m = 21",
           detail + fmt("BF/FPWP(m=21)=%.3g", ratio21));
}

void polynomial_scaling() {
    std::vector<double> times;
    std::string detail;
    for (std::size_t m : {250, 500, 1000}) {
        const auto topo = gen_er_edges(200, m, substream_seed(kRoot, 100 + m));
        const auto net = assign_probabilities(topo, UniformProbability{}, substream_seed(kRoot, 200 + m));
        const auto comm = random_assignment(200, 5, substream_seed(kRoot, 300 + m));
        times.push_back(time_call([&] { fpwp(net, comm); }, 1.0, 1000));
        detail += "m=" + std::to_string(m) + fmt(" %.4gs; ", times.back());
    }
    const double r1 = times[1] / times[0], r2 = times[2] / times[1];
    const double bound = std::pow(2.0, 3.5);
    report(4, r1 <= bound && r2 <= bound, "FPWP grows at most 2^3.5 per doubling of m",
           detail + fmt("ratios %.2f", r1) + fmt(", %.2f", r2) + fmt(" (bound %.2f)", bound));
}

void weighting_failure() {
    const auto planted = gen_sbm(bench::lccs_params(substream_seed(kRoot, 0)));
    double lo = INFINITY, hi = -INFINITY, min_gap = INFINITY, gap_at_one = 0;
    std::string gaps;
    for (int i = 1; i <= 10; ++i) {
        const double p = i / 10.0;
        const auto net = assign_probabilities(planted.topology, ConstantProbability{p}, 0);
        const double w = weighting_estimate(net, planted.communities).value;
        const double f = fpwp(net, planted.communities).value;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
        if (i <= 5) {
            min_gap = std::min(min_gap, std::abs(w - f));
            gaps += fmt(" %.4f", std::abs(w - f));
        }
        if (i == 10) gap_at_one = std::abs(w - f);
    }
    report(5, hi - lo <= 1e-12 && min_gap > 0.05 && gap_at_one <= 1e-9,
           "weighted modularity ignores p and misses E(Q) for p <= 0.5",
           fmt("spread=%.2e ", hi - lo) + "|W-FPWP| at p=0.1..0.5:" + gaps + fmt(" (min %.4f) ", min_gap) +
               fmt("|W-FPWP|(p=1)=%.2e", gap_at_one));
}

void thresholding_failure() {
    const auto inst = bench::sbm_with_edge_count(bench::lccs_params(0), 110, ConstantProbability{1.0},
                                                 substream_seed(kRoot, 0));
    const auto topo = bench::topology_of(inst.network);
    const auto& comm = inst.communities;

    const auto uncertain = assign_probabilities(topo, EntropyTarget{1.0}, 0);
    const double full = modularity_by_community(inst.network, PossibleWorld::full(inst.network), comm);
    const double exact = fpwp(uncertain, comm).value;
    double lo = INFINITY, hi = -INFINITY, closest = INFINITY;
    for (int t = 1; t <= 10; ++t) {
        const double q = threshold_estimate(uncertain, comm, t / 10.0).value;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        closest = std::min(closest, std::abs(q - exact));
    }
    const bool spans = lo <= std::min(full, 0.0) + 1e-12 && hi >= std::max(full, 0.0) - 1e-12;

    const auto certain = assign_probabilities(topo, EntropyTarget{0.0}, 0);
    const double exact0 = fpwp(certain, comm).value;
    double worst0 = 0;
    for (int t = 1; t <= 10; ++t)
        worst0 = std::max(worst0, std::abs(threshold_estimate(certain, comm, t / 10.0).value - exact0));

    report(6, spans && closest > 0.01 && worst0 <= 1e-9,
           "thresholding fails at entropy 1, is exact at entropy 0",
           fmt("range=[%.4f, ", lo) + fmt("%.4f] ", hi) + fmt("Q_full=%.4f ", full) +
               fmt("FPWP=%.4f ", exact) + fmt("min|thr-FPWP|=%.4f ", closest) +
               fmt("max err at r=0: %.2e", worst0));
}

struct SamplingCase {
    const char* name;
    SbmParams params;
    double ratio;
};

// Smallest grid theta from which the median |error| over the seeds stays
// below the target.
std::uint64_t theta_needed(const ProbabilisticNetwork& net, const CommunityAssignment& comm, double exact,
                           const std::vector<std::uint64_t>& grid, std::size_t seeds, double target) {
    std::vector<double> medians;
    for (auto theta : grid) {
        std::vector<double> errs;
        for (std::size_t s = 0; s < seeds; ++s)
            errs.push_back(std::abs(sample_estimate(net, comm, theta, substream_seed(kRoot, 1000 + s)).value - exact));
        medians.push_back(median(errs));
    }
    std::size_t first = grid.size();
    for (std::size_t i = grid.size(); i-- > 0;) {
        if (medians[i] >= target) break;
        first = i;
    }
    return first < grid.size() ? grid[first] : 0;
}

void sampling_convergence() {
    constexpr std::size_t kSeeds = 50;
    const auto lccs = gen_sbm(bench::lccs_params(substream_seed(kRoot, 2)));
    const auto ccs = gen_sbm(bench::ccs_params(substream_seed(kRoot, 1)));

    const auto lccs1 = assign_probabilities(lccs.topology, EntropyTarget{1.0}, 0);
    const double exact = fpwp(lccs1, lccs.communities).value;
    std::size_t within = 0;
    for (std::size_t s = 0; s < kSeeds; ++s) {
        const auto est = sample_estimate(lccs1, lccs.communities, 10000, substream_seed(kRoot, 1000 + s));
        if (std::abs(est.value - exact) <= 4.0 * est.standard_error.value_or(0.0)) ++within;
    }

    std::vector<std::uint64_t> grid;
    for (int j = 0; j <= 80; ++j) {
        const auto theta = static_cast<std::uint64_t>(std::llround(std::pow(10.0, j / 20.0)));
        if (grid.empty() || theta != grid.back()) grid.push_back(theta);
    }
    auto needed = [&](const PlantedTopology& planted, double ratio) {
        const auto net = assign_probabilities(planted.topology, EntropyTarget{ratio}, 0);
        return theta_needed(net, planted.communities, fpwp(net, planted.communities).value, grid, kSeeds, 0.005);
    };
    const auto l10 = needed(lccs, 1.0);
    const auto l047 = needed(lccs, 0.47);
    const auto c10 = needed(ccs, 1.0);
    const auto c047 = needed(ccs, 0.47);
    const bool ok = static_cast<double>(within) >= 0.95 * kSeeds && l10 > l047 && l10 > c10;
    report(7, ok, "sampling within 4 SE at theta = 1e4; slower convergence at high entropy and for LCCS",
           std::to_string(within) + "/50 within 4 SE; theta needed: LCCS r=1 " + std::to_string(l10) +
               ", LCCS r=0.47 " + std::to_string(l047) + ", CCS r=1 " + std::to_string(c10) +
               ", CCS r=0.47 " + std::to_string(c047));
}

void poisson_binomial_suite() {
    std::mt19937_64 gen(substream_seed(kRoot, 8));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0, worst_sum = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::VectorXd ps(static_cast<Eigen::Index>(gen() % 21));
        for (auto& p : ps) p = u(gen);
        const Pmf e = pb_pmf_enumeration(ps, 20), d = pb_pmf_dp(ps), f = pb_pmf_dft(ps);
        worst = std::max({worst, (e - d).cwiseAbs().maxCoeff(), (d - f).cwiseAbs().maxCoeff()});
        worst_sum = std::max({worst_sum, std::abs(e.sum() - 1), std::abs(d.sum() - 1), std::abs(f.sum() - 1)});
    }
    Eigen::VectorXd big(2000);
    for (auto& p : big) p = u(gen);
    const Pmf d = pb_pmf_dp(big), f = pb_pmf_dft(big);
    const double big_diff = (d - f).cwiseAbs().maxCoeff();
    worst_sum = std::max({worst_sum, std::abs(d.sum() - 1), std::abs(f.sum() - 1)});
    report(8, worst <= 1e-9 && big_diff <= 1e-9 && worst_sum <= 1e-9,
           "enumeration, DP and DFT agree; PMFs sum to one",
           fmt("max diff |ps|<=20: %.2e ", worst) + fmt("|ps|=2000: %.2e ", big_diff) +
               fmt("max |sum-1|: %.2e", worst_sum));
}

void entropy_pins() {
    auto ratio_for = [](double p) {
        std::vector<Edge> edges;
        for (NodeId i = 0; i < 20; ++i) edges.push_back({i, i + 1, p});
        return entropy_ratio(ProbabilisticNetwork(21, std::move(edges)));
    };
    const double half = ratio_for(0.5), ninety = ratio_for(0.9), one = ratio_for(1.0);
    report(9, half == 1.0 && ninety >= 0.465 && ninety <= 0.475 && one == 0.0, "entropy ratio pins",
           fmt("r(0.5)=%.17g ", half) + fmt("r(0.9)=%.6f ", ninety) + fmt("r(1)=%.17g", one));
}

void structural_trends() {
    const auto topo = gen_er_edges(100, 500, substream_seed(kRoot, 0));
    const auto net = assign_probabilities(topo, UniformProbability{}, substream_seed(kRoot, 1));

    std::vector<double> by_k;
    for (std::size_t k = 3; k <= 20; ++k) {
        const auto comm = random_assignment(100, k, substream_seed(kRoot, 100 + k));
        by_k.push_back(time_call([&] { fpwp(net, comm); }, 0.5, 10000));
    }
    int inversions = 0;
    for (std::size_t i = 1; i < by_k.size(); ++i)
        if (by_k[i] < by_k[i - 1]) ++inversions;

    std::vector<double> variance, by_var;
    for (std::size_t small : {20, 18, 16, 14, 12, 10, 8, 6, 4, 2, 1}) {
        const auto sizes = bench::skewed_sizes(100, 5, small);
        const auto comm = assignment_with_sizes(sizes, substream_seed(kRoot, 100 + small));
        variance.push_back(bench::size_variance(sizes));
        by_var.push_back(time_call([&] { fpwp(net, comm); }, 0.5, 10000));
    }
    const double rho = spearman(variance, by_var);
    const bool ok = inversions <= 1 && rho >= 0.8 && by_var.back() > by_var.front();
    report(10, ok, "FPWP time grows with k and with community-size variance",
           "inversions over k=3..20: " + std::to_string(inversions) + fmt(" (T(3)=%.3gs, ", by_k.front()) +
               fmt("T(20)=%.3gs); ", by_k.back()) + fmt("Spearman(variance, T)=%.3f ", rho) +
               fmt("(T(var=0)=%.3gs, ", by_var.front()) + fmt("T(var=1444)=%.3gs)", by_var.back()));
}

}  // namespace

int main(int argc, char** argv) {
    const auto expected = parse_expected(argc, argv);
    exactness();
    beyond_brute_force();
    runtime_ordering();
    polynomial_scaling();
    weighting_failure();
    thresholding_failure();
    sampling_convergence();
    poisson_binomial_suite();
    entropy_pins();
    structural_trends();
    std::string ids, expected_ids;
    for (int id : failed) ids += (ids.empty() ? "" : ",") + std::to_string(id);
    for (int id : expected) expected_ids += (expected_ids.empty() ? "" : ",") + std::to_string(id);
    std::printf("%zu of 10 criteria failed [%s]; expected failures [%s]\n", failed.size(), ids.c_str(),
                expected_ids.c_str());
    return failed == expected ? 0 : 1;
}
