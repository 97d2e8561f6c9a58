#include "expmod/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace expmod {

namespace {

struct RawEdge {
    std::string u;
    std::string v;
    double p;
    std::size_t line;
};

struct RawLabel {
    std::string node;
    std::string community;
    std::size_t line;
};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == '\t' || line[i] == ' ' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != '\t' && line[i] != ' ' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

bool is_skippable(const std::vector<std::string>& fields) {
    return fields.empty() || fields.front().front() == '#';
}

bool parse_integer(const std::string& s, long long& out) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_real(const std::string& s, double& out) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

// Labels sorted numerically when all of them are integers, else as strings.
// Numeric ties ("01" and "1") keep their lexicographic order.
std::vector<std::string> natural_order(const std::set<std::string>& labels) {
    std::vector<std::pair<long long, std::string>> numeric;
    numeric.reserve(labels.size());
    for (const auto& s : labels) {
        long long x;
        if (!parse_integer(s, x)) return {labels.begin(), labels.end()};
        numeric.emplace_back(x, s);
    }
    std::stable_sort(numeric.begin(), numeric.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    out.reserve(numeric.size());
    for (auto& [_, s] : numeric) out.push_back(std::move(s));
    return out;
}

std::vector<RawEdge> read_raw_edges(std::istream& in) {
    std::vector<RawEdge> edges;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto fields = split_fields(line);
        if (is_skippable(fields)) continue;
        if (fields.size() != 3) throw ParseError("expected 'u<TAB>v<TAB>p'", number);
        double p;
        if (!parse_real(fields[2], p)) throw ParseError("probability is not a number", number);
        if (!(p > 0.0 && p <= 1.0)) throw ParseError("probability must lie in (0, 1]", number);
        if (fields[0] == fields[1]) throw ParseError("self-loop", number);
        edges.push_back(RawEdge{fields[0], fields[1], p, number});
    }
    return edges;
}

std::vector<RawLabel> read_raw_labels(std::istream& in) {
    std::vector<RawLabel> labels;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto fields = split_fields(line);
        if (is_skippable(fields)) continue;
        if (fields.size() != 2) throw ParseError("expected 'node<TAB>community'", number);
        labels.push_back(RawLabel{fields[0], fields[1], number});
    }
    return labels;
}

ProbabilisticNetwork build_network(const std::vector<RawEdge>& raw,
                                   const std::set<std::string>& extra_nodes) {
    std::set<std::string> names(extra_nodes);
    for (const auto& e : raw) {
        names.insert(e.u);
        names.insert(e.v);
    }
    std::vector<std::string> labels = natural_order(names);
    std::map<std::string, NodeId> id;
    for (std::size_t i = 0; i < labels.size(); ++i) id[labels[i]] = static_cast<NodeId>(i);

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    std::unordered_set<std::uint64_t> seen;
    for (const auto& e : raw) {
        const NodeId u = id[e.u];
        const NodeId v = id[e.v];
        const auto key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
        if (!seen.insert(key).second) throw ParseError("duplicate edge", e.line);
        edges.push_back(Edge{u, v, e.p});
    }
    const std::size_t n = labels.size();
    return ProbabilisticNetwork(n, std::move(edges), std::move(labels));
}

CommunityAssignment build_assignment(const std::vector<RawLabel>& raw,
                                     const ProbabilisticNetwork& net) {
    std::map<std::string, NodeId> id;
    for (std::size_t v = 0; v < net.node_count(); ++v)
        id[net.label(static_cast<NodeId>(v))] = static_cast<NodeId>(v);

    std::set<std::string> community_names;
    for (const auto& r : raw) community_names.insert(r.community);
    const auto ordered = natural_order(community_names);
    std::map<std::string, CommunityId> cid;
    for (std::size_t c = 0; c < ordered.size(); ++c) cid[ordered[c]] = static_cast<CommunityId>(c);

    std::vector<CommunityId> labels(net.node_count());
    std::vector<bool> seen(net.node_count(), false);
    for (const auto& r : raw) {
        auto it = id.find(r.node);
        if (it == id.end()) throw ParseError("node '" + r.node + "' is not in the network", r.line);
        if (seen[it->second]) throw ParseError("node '" + r.node + "' listed twice", r.line);
        seen[it->second] = true;
        labels[it->second] = cid[r.community];
    }
    for (std::size_t v = 0; v < net.node_count(); ++v)
        if (!seen[v])
            throw ParseError("node '" + net.label(static_cast<NodeId>(v)) + "' has no community", 0);
    return CommunityAssignment(std::move(labels));
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return in;
}

}  // namespace

ProbabilisticNetwork read_network(std::istream& in) { return build_network(read_raw_edges(in), {}); }

ProbabilisticNetwork read_network(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_network(in);
}

CommunityAssignment read_communities(std::istream& in, const ProbabilisticNetwork& net) {
    return build_assignment(read_raw_labels(in), net);
}

Instance read_instance(std::istream& network, std::istream& communities) {
    const auto edges = read_raw_edges(network);
    const auto labels = read_raw_labels(communities);
    std::set<std::string> listed;
    for (const auto& r : labels) listed.insert(r.node);
    ProbabilisticNetwork net = build_network(edges, listed);
    CommunityAssignment comm = build_assignment(labels, net);
    return Instance{std::move(net), std::move(comm)};
}

Instance read_instance(const std::filesystem::path& network,
                       const std::filesystem::path& communities) {
    auto net_in = open_input(network);
    auto comm_in = open_input(communities);
    return read_instance(net_in, comm_in);
}

std::string format_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.10g", v);
    return buf;
}

void write_network(std::ostream& out, const ProbabilisticNetwork& net) {
    std::vector<std::size_t> order(net.edge_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
        const Edge& e = net.edge(i);
        return std::pair{std::min(e.u, e.v), std::max(e.u, e.v)};
    };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
    for (auto i : order) {
        const auto [lo, hi] = key(i);
        out << net.label(lo) << '\t' << net.label(hi) << '\t' << format_shortest(net.edge(i).p)
            << '\n';
    }
}

void write_communities(std::ostream& out, const ProbabilisticNetwork& net,
                       const CommunityAssignment& comm) {
    require_compatible(net, comm);
    for (std::size_t v = 0; v < net.node_count(); ++v)
        out << net.label(static_cast<NodeId>(v)) << '\t' << comm[static_cast<NodeId>(v)] << '\n';
}

std::string result_header() { return "method,value,elapsed_seconds,params,seed"; }

std::string result_row(const Estimate& est) {
    std::ostringstream os;
    os << to_string(est.method) << ',' << format_value(est.value) << ',';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", est.elapsed_seconds);
    os << buf << ',';
    bool first = true;
    auto params = est.params;
    if (est.standard_error) params["standard_error"] = format_shortest(*est.standard_error);
    for (const auto& [k, v] : params) {
        if (!first) os << ';';
        os << k << '=' << v;
        first = false;
    }
    os << ',';
    if (est.seed) os << *est.seed;
    return os.str();
}

}  // namespace expmod
