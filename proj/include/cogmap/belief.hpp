#pragma once
// Consensus graphs from entropy-weighted belief ranges.
//
// Every respondent contributes, for each ordered construct pair, an interval
// [lo, hi] of plausible unnormalized weights:
//   explicit response w                      -> [w - 0.5, w + 0.5]
//   both endpoints drawn, no arrow           -> [-0.5, 0.5]
//   absent construct, its pair with ses      -> [-(m - 0.5), m - 0.5], m = weakest drawn magnitude
//   anything else touching an absent node    -> [-3.5, 3.5]
// and the pair's belief function is b(x) = sum of H_g = ln(1 / (hi - lo))
// over respondents whose interval strictly contains x. A pair's score is the
// mean of b over [-3.5, 3.5], averaged per respondent.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogmap/causal_map.hpp"

namespace cogmap {

inline constexpr double kWeightDomainLo = -3.5;
inline constexpr double kWeightDomainHi = 3.5;
inline constexpr double kWeightDomainWidth = kWeightDomainHi - kWeightDomainLo;

struct WeightRange {
    double lo = kWeightDomainLo;
    double hi = kWeightDomainHi;

    double width() const { return hi - lo; }
    bool contains_strictly(double x) const { return lo < x && x < hi; }
    bool operator==(const WeightRange&) const = default;
};

using PairKey = std::pair<std::string, std::string>;  // (cause, effect)

// Ranges for every ordered pair over vocabulary plus ses. `other` edges are
// not part of the pair universe.
std::map<PairKey, WeightRange> edge_ranges(const CausalMap& map, std::span<const std::string> vocabulary);

// ln(1 / width); throws std::invalid_argument for a non-positive width.
double entropy_weight(const WeightRange& range);

// Throws std::invalid_argument when x lies outside [-3.5, 3.5].
double belief_function(std::span<const CausalMap> dataset, const PairKey& pair, double x);

struct BeliefScore {
    PairKey pair;
    double score = 0.0;
    std::size_t support = 0;  // explicit responses
    std::optional<double> mean_explicit_weight;
};

// Analytic score: (1/n) sum_g H_g * width_g / 7.
BeliefScore belief_score(std::span<const CausalMap> dataset, const PairKey& pair);

// Scores of every ordered pair, sorted by score descending then pair.
std::vector<BeliefScore> all_belief_scores(std::span<const CausalMap> dataset,
                                           std::span<const std::string> vocabulary);

// Linear-interpolation percentile (p in [0, 100]) of unsorted values.
double percentile(std::vector<double> values, double p);

struct ConsensusGraph {
    double percentile = 0.0;
    double threshold = 0.0;
    std::vector<std::string> nodes;    // endpoints of kept edges, sorted
    std::vector<BeliefScore> edges;    // sorted like all_belief_scores
};

// Keeps the explicitly supported pairs whose score reaches the given
// percentile of all pair scores. Throws std::invalid_argument on an empty
// dataset.
ConsensusGraph build_consensus(std::span<const CausalMap> dataset, double percentile,
                               std::span<const std::string> vocabulary);
ConsensusGraph build_consensus(std::span<const CausalMap> dataset, double percentile);

std::string pair_scores_csv(const std::vector<BeliefScore>& scores);

}  // namespace cogmap
