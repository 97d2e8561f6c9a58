#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "expmod/estimators.hpp"
#include "expmod/network.hpp"

namespace expmod {

// Network file: one edge per line, "u<TAB>v<TAB>p", p in (0, 1].
// Community file: one node per line, "node<TAB>community".
// '#' starts a comment line; blank lines are ignored; any run of tabs or
// spaces separates fields.
//
// Node labels are arbitrary strings. Dense ids follow the labels' natural
// order: numeric when every label is an integer, lexicographic otherwise.
// Community labels are densified the same way.

/// Network and assignment read together; nodes that appear only in the
/// community file become isolated nodes.
struct Instance {
    ProbabilisticNetwork network;
    CommunityAssignment communities;
};

/// Throws ParseError (with line number) on malformed input, self-loops,
/// duplicate edges or probabilities outside (0, 1].
ProbabilisticNetwork read_network(std::istream& in);
ProbabilisticNetwork read_network(const std::filesystem::path& path);

/// Every node of `net` must appear exactly once and no other node may appear.
CommunityAssignment read_communities(std::istream& in, const ProbabilisticNetwork& net);

Instance read_instance(std::istream& network, std::istream& communities);
Instance read_instance(const std::filesystem::path& network,
                       const std::filesystem::path& communities);

/// Canonical form: edges sorted by (min id, max id), lower id first,
/// probabilities in shortest round-trip notation. Isolated nodes are not
/// representable and are dropped.
void write_network(std::ostream& out, const ProbabilisticNetwork& net);
void write_communities(std::ostream& out, const ProbabilisticNetwork& net,
                       const CommunityAssignment& comm);

/// Shortest decimal that parses back to the same double.
std::string format_shortest(double v);
/// Ten significant digits, trailing zeros kept ("0.1250000000").
std::string format_value(double v);

/// "method,value,elapsed_seconds,params,seed"
std::string result_header();
/// One CSV row; params are "key=value" pairs joined by ';'.
std::string result_row(const Estimate& est);

}  // namespace expmod
