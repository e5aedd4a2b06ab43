#pragma once
// Popularity tables and aggregated transitive influence on SES.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogmap/causal_map.hpp"

namespace cogmap {

struct FrequencyRow {
    std::string construct;
    double fraction;
};

struct RelationshipRow {
    std::string cause;
    std::string effect;
    double fraction;
};

// Fraction of maps containing each canonical construct, descending (ties in
// canonical order). Throws std::invalid_argument on an empty dataset.
std::vector<FrequencyRow> construct_frequency(std::span<const CausalMap> dataset);

// Fraction of maps drawing each (cause, effect) pair between canonical
// constructs and ses; other and custom endpoints are skipped.
std::vector<RelationshipRow> relationship_frequency(std::span<const CausalMap> dataset);

// u[target][antecedent] = w_a^2 / sum over all antecedents of target (other included).
using NormalizedWeights = std::map<std::string, std::map<std::string, double>>;

NormalizedWeights normalize_weights(const CausalMap& map);

struct InfluenceOptions {
    double tol = 1e-9;
    int max_iter = 10000;
};

// iota(ses) = 1 and iota(i) = sum over successors j of u_{i->j} * iota(j),
// solved by fixed-point iteration from zero, retried with 0.5 damping. The
// result covers every node, other nodes included. Values are non-negative
// and at most 1 in acyclic maps; feedback loops can push them above 1.
// Throws NumericalError naming a cycle when neither pass converges.
std::map<std::string, double> transitive_influence(const CausalMap& map, const InfluenceOptions& opts = {});

// Mean influence per canonical construct across maps, x100, absent = 0.
std::vector<FrequencyRow> aggregate_influence(std::span<const CausalMap> dataset,
                                              const InfluenceOptions& opts = {});

std::string frequency_csv(const std::vector<FrequencyRow>& rows, std::string_view value_header);
std::string relationship_csv(const std::vector<RelationshipRow>& rows);

// Aligned text tables labelled with display names; values are multiplied by
// `scale` (100 turns fractions into percent).
std::string frequency_report(const std::vector<FrequencyRow>& rows, std::string_view title,
                             double scale = 100.0);
std::string relationship_report(const std::vector<RelationshipRow>& rows, std::string_view title);

}  // namespace cogmap
