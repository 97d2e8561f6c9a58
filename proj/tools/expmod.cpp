// expmod: expected modularity of probabilistic networks.
//
//   expmod compute  --network N --communities C --method fpwp
//   expmod generate --model sbm --params k=3 nc=3 p_in=0.8 p_out=0.03 --prob-mode entropy:0.47 --out N
//   expmod bench    --suite accuracy --out results/
//
// Exit status: 0 success, 2 bad input or usage, 3 enumeration cap exceeded,
// 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expmod/bench.hpp"
#include "expmod/estimators.hpp"
#include "expmod/generators.hpp"
#include "expmod/io.hpp"
#include "expmod/random.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::size_t default_cap() {
    if (const char* env = std::getenv("EXPMOD_ENUM_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoul(env));
        } catch (const std::exception&) {
            throw UsageError(std::string("EXPMOD_ENUM_CAP is not a number: ") + env);
        }
    }
    return expmod::kDefaultEnumerationCap;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + item + "' is not K=V");
        std::string key = item.substr(0, eq);
        for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        out[key] = item.substr(eq + 1);
    }
    return out;
}

class Params {
public:
    explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double real(const std::string& key) const {
        const auto& s = require(key);
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("parameter " + key + "=" + s + " is not a number");
    }

    std::size_t count(const std::string& key) const {
        const auto& s = require(key);
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used);
            if (used == s.size() && s.front() != '-') return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError("parameter " + key + "=" + s + " is not a non-negative integer");
    }

private:
    const std::string& require(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw UsageError("missing model parameter " + key);
        return it->second;
    }

    std::map<std::string, std::string> values_;
};

expmod::ProbabilityMode parse_prob_mode(const std::string& mode) {
    auto number = [&](std::size_t offset) {
        const std::string s = mode.substr(offset);
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("bad --prob-mode '" + mode + "'");
    };
    if (mode == "uniform") return expmod::UniformProbability{};
    if (mode.rfind("const:", 0) == 0) return expmod::ConstantProbability{number(6)};
    if (mode.rfind("entropy:", 0) == 0) return expmod::EntropyTarget{number(8)};
    throw UsageError("--prob-mode must be const:P, entropy:R or uniform");
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

struct ComputeArgs {
    std::string network;
    std::string communities;
    std::string method;
    std::optional<std::uint64_t> samples;
    std::optional<double> threshold;
    std::uint64_t seed = 0;
    std::optional<std::size_t> cap;
    unsigned threads = 1;
    std::string out;
};

int run_compute(const ComputeArgs& args) {
    const auto method = expmod::parse_method(args.method);
    if (!method) throw UsageError("unknown method '" + args.method + "'");
    if (*method == expmod::Method::sampling && !args.samples)
        throw UsageError("--method sampling requires --samples");
    if (*method == expmod::Method::thresholding && !args.threshold)
        throw UsageError("--method thresholding requires --threshold");

    const auto instance = expmod::read_instance(args.network, args.communities);

    expmod::EstimateRequest request;
    request.method = *method;
    request.samples = args.samples;
    request.threshold = args.threshold;
    request.seed = args.seed;
    request.exact.cap = args.cap.value_or(default_cap());
    request.exact.threads = args.threads;
    const auto est = expmod::estimate(instance.network, instance.communities, request);

    auto emit = [&](std::ostream& os) { os << expmod::result_header() << '\n' << expmod::result_row(est) << '\n'; };
    if (args.out.empty()) {
        emit(std::cout);
    } else {
        auto out = open_output(args.out);
        emit(out);
    }
    return 0;
}

struct GenerateArgs {
    std::string model;
    std::vector<std::string> params;
    std::string prob_mode = "uniform";
    std::uint64_t seed = 0;
    std::string out;
    std::string communities_out;
};

int run_generate(const GenerateArgs& args) {
    const Params p(parse_params(args.params));
    const auto mode = parse_prob_mode(args.prob_mode);
    const std::uint64_t topo_seed = expmod::substream_seed(args.seed, 0);

    expmod::Topology topology;
    std::optional<expmod::CommunityAssignment> planted;
    try {
        if (args.model == "sbm") {
            auto result = expmod::gen_sbm({p.count("k"), p.count("nc"), p.real("p_in"), p.real("p_out"), topo_seed});
            topology = std::move(result.topology);
            planted = std::move(result.communities);
        } else if (args.model == "er") {
            if (p.has("m"))
                topology = expmod::gen_er_edges(p.count("n"), p.count("m"), topo_seed);
            else
                topology = expmod::gen_er(p.count("n"), p.real("p"), topo_seed);
        } else if (args.model == "ba") {
            topology = expmod::gen_ba(p.count("n"), p.count("attach"), topo_seed);
        } else if (args.model == "ws") {
            topology = expmod::gen_ws(p.count("n"), p.count("degree"), p.real("rewire"), topo_seed);
        } else if (args.model == "ffn") {
            topology = expmod::gen_ffn(p.count("n"), p.real("fwd_burn"), topo_seed);
        } else {
            throw UsageError("unknown model '" + args.model + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    expmod::ProbabilisticNetwork net;
    try {
        net = expmod::assign_probabilities(topology, mode, expmod::substream_seed(args.seed, 1));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    {
        auto out = open_output(args.out);
        expmod::write_network(out, net);
    }
    if (!args.communities_out.empty()) {
        if (!planted) {
            if (!p.has("communities"))
                throw UsageError("--communities-out needs communities=K for model " + args.model);
            try {
                planted = expmod::random_assignment(topology.node_count, p.count("communities"),
                                                    expmod::substream_seed(args.seed, 2));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        auto out = open_output(args.communities_out);
        expmod::write_communities(out, net, *planted);
    }
    return 0;
}

struct BenchArgs {
    std::string suite;
    std::string out;
    std::uint64_t seed = 1;
    std::optional<std::size_t> cap;
};

int run_bench(const BenchArgs& args) {
    std::vector<std::string_view> suites;
    if (args.suite == "all") {
        suites = expmod::bench::suite_names();
    } else {
        const auto& names = expmod::bench::suite_names();
        if (std::find(names.begin(), names.end(), args.suite) == names.end())
            throw UsageError("unknown suite '" + args.suite + "'");
        suites.push_back(args.suite);
    }
    expmod::bench::Config cfg;
    cfg.seed = args.seed;
    cfg.brute_force_cap = args.cap.value_or(default_cap());

    const std::filesystem::path dir(args.out);
    std::filesystem::create_directories(dir);
    {
        auto readme = open_output(dir / "README.md");
        readme << expmod::bench::suites_readme();
        auto host = open_output(dir / "host.txt");
        host << expmod::bench::host_metadata();
    }
    for (auto name : suites) {
        std::cerr << "running " << name << "...\n";
        const auto table = expmod::bench::run_suite(name, cfg);
        auto out = open_output(dir / (std::string(name) + ".csv"));
        expmod::bench::write_csv(out, table);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected modularity of probabilistic networks"};
    app.require_subcommand(1);

    ComputeArgs compute;
    auto* cmd_compute = app.add_subcommand("compute", "Run one estimator on a network and community file");
    cmd_compute->add_option("--network", compute.network, "Edge file: u<TAB>v<TAB>p")->required();
    cmd_compute->add_option("--communities", compute.communities, "Community file: node<TAB>community")->required();
    cmd_compute->add_option("--method", compute.method,
                            "bruteforce | sampling | thresholding | weighting | pwp | fpwp")->required();
    cmd_compute->add_option("--samples", compute.samples, "Sampled worlds (sampling)");
    cmd_compute->add_option("--threshold", compute.threshold, "Keep edges with p >= threshold (thresholding)");
    cmd_compute->add_option("--seed", compute.seed, "Sampling seed");
    cmd_compute->add_option("--cap", compute.cap, "Enumeration cap for bruteforce/pwp (env EXPMOD_ENUM_CAP)");
    cmd_compute->add_option("--threads", compute.threads, "Worker threads for bruteforce/sampling");
    cmd_compute->add_option("--out", compute.out, "Output CSV (default: stdout)");

    GenerateArgs generate;
    auto* cmd_generate = app.add_subcommand("generate", "Write a synthetic probabilistic network");
    cmd_generate->add_option("--model", generate.model, "sbm | er | ba | ws | ffn")->required();
    cmd_generate->add_option("--params", generate.params, "Model parameters as K=V ...");
    cmd_generate->add_option("--prob-mode", generate.prob_mode, "const:P | entropy:R | uniform");
    cmd_generate->add_option("--seed", generate.seed, "Generator seed");
    cmd_generate->add_option("--out", generate.out, "Network file to write")->required();
    cmd_generate->add_option("--communities-out", generate.communities_out,
                             "Community file (planted for sbm; needs communities=K otherwise)");

    BenchArgs bench;
    auto* cmd_bench = app.add_subcommand("bench", "Regenerate experiment tables as CSV");
    cmd_bench->add_option("--suite", bench.suite,
                          "accuracy | runtime | weighting | thresholding | sampling-convergence | "
                          "communities | variance | models | all")->required();
    cmd_bench->add_option("--out", bench.out, "Output directory")->required();
    cmd_bench->add_option("--seed", bench.seed, "Root seed");
    cmd_bench->add_option("--cap", bench.cap, "Largest m run through brute force");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_compute) return run_compute(compute);
        if (*cmd_generate) return run_generate(generate);
        if (*cmd_bench) return run_bench(bench);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const expmod::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const expmod::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
