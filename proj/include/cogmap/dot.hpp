#pragma once
// Graphviz output for single maps and consensus graphs.

#include <string>
#include <string_view>

#include "cogmap/belief.hpp"
#include "cogmap/causal_map.hpp"

namespace cogmap {

std::string dot_quote(std::string_view s);

// One node per construct, ses highlighted, other cards as small grey
// boxes; edges carry the signed weight (magnitude only for other cards).
std::string map_to_dot(const CausalMap& map);

// Edges labelled "score / mean weight".
std::string consensus_to_dot(const ConsensusGraph& graph, std::string_view name);

}  // namespace cogmap
