#include "cogmap/belief.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cogmap/vocabulary.hpp"

namespace cogmap {

namespace {

// Per-map lookup used to resolve a pair's range without materialising the
// whole table.
class RangeResolver {
public:
    explicit RangeResolver(const CausalMap& map) {
        included_.insert(std::string(kSesId));
        for (const auto& n : map.nodes)
            if (n.kind != NodeKind::other) included_.insert(n.id);
        int weakest = 0;
        for (const auto& e : map.edges) {
            const Node* from = map.find_node(e.from);
            if (from && from->kind == NodeKind::other) continue;
            explicit_[{e.from, e.to}] = e.signed_weight();
            weakest = weakest == 0 ? e.magnitude : std::min(weakest, e.magnitude);
        }
        weakest_ = std::max(weakest, 1);
    }

    std::optional<int> explicit_weight(const PairKey& p) const {
        auto it = explicit_.find(p);
        if (it == explicit_.end()) return std::nullopt;
        return it->second;
    }

    WeightRange range(const PairKey& p) const {
        if (auto w = explicit_weight(p)) return {*w - 0.5, *w + 0.5};
        const bool has_cause = included_.count(p.first) > 0;
        const bool has_effect = included_.count(p.second) > 0;
        if (has_cause && has_effect) return {-0.5, 0.5};
        if (!has_cause && p.second == kSesId) {
            const double half = weakest_ - 0.5;
            return {-half, half};
        }
        return {kWeightDomainLo, kWeightDomainHi};
    }

private:
    std::set<std::string> included_;
    std::map<PairKey, int> explicit_;
    int weakest_ = 1;
};

std::vector<std::string> pair_universe_nodes(std::span<const std::string> vocabulary) {
    std::vector<std::string> ids(vocabulary.begin(), vocabulary.end());
    if (std::find(ids.begin(), ids.end(), kSesId) == ids.end()) ids.emplace_back(kSesId);
    return ids;
}

BeliefScore score_pair(std::span<const RangeResolver> resolvers, const PairKey& pair) {
    BeliefScore s;
    s.pair = pair;
    std::vector<double> terms;
    terms.reserve(resolvers.size());
    double weight_sum = 0.0;
    for (const auto& r : resolvers) {
        const auto range = r.range(pair);
        terms.push_back(entropy_weight(range) * range.width() / kWeightDomainWidth);
        if (auto w = r.explicit_weight(pair)) {
            ++s.support;
            weight_sum += *w;
        }
    }
    // Summing in sorted order makes the score independent of dataset order.
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    s.score = sum / static_cast<double>(resolvers.size());
    if (s.support > 0) s.mean_explicit_weight = weight_sum / static_cast<double>(s.support);
    return s;
}

std::vector<RangeResolver> resolvers_for(std::span<const CausalMap> dataset) {
    if (dataset.empty()) throw std::invalid_argument("dataset is empty");
    std::vector<RangeResolver> out;
    out.reserve(dataset.size());
    for (const auto& m : dataset) out.emplace_back(m);
    return out;
}

}  // namespace

std::map<PairKey, WeightRange> edge_ranges(const CausalMap& map, std::span<const std::string> vocabulary) {
    const RangeResolver resolver(map);
    const auto ids = pair_universe_nodes(vocabulary);
    std::map<PairKey, WeightRange> out;
    for (const auto& a : ids)
        for (const auto& b : ids)
            if (a != b) out.emplace(PairKey{a, b}, resolver.range({a, b}));
    return out;
}

double entropy_weight(const WeightRange& range) {
    const double w = range.width();
    if (!(w > 0.0)) throw std::invalid_argument(fmt::format("range [{}, {}] has no width", range.lo, range.hi));
    return std::log(1.0 / w);
}

double belief_function(std::span<const CausalMap> dataset, const PairKey& pair, double x) {
    if (x < kWeightDomainLo || x > kWeightDomainHi)
        throw std::invalid_argument(fmt::format("weight {} outside [-3.5, 3.5]", x));
    double b = 0.0;
    for (const auto& m : dataset) {
        const auto range = RangeResolver(m).range(pair);
        if (range.contains_strictly(x)) b += entropy_weight(range);
    }
    return b;
}

BeliefScore belief_score(std::span<const CausalMap> dataset, const PairKey& pair) {
    const auto resolvers = resolvers_for(dataset);
    return score_pair(resolvers, pair);
}

std::vector<BeliefScore> all_belief_scores(std::span<const CausalMap> dataset,
                                           std::span<const std::string> vocabulary) {
    const auto resolvers = resolvers_for(dataset);
    const auto ids = pair_universe_nodes(vocabulary);
    std::vector<BeliefScore> scores;
    scores.reserve(ids.size() * ids.size());
    for (const auto& a : ids)
        for (const auto& b : ids)
            if (a != b) scores.push_back(score_pair(resolvers, {a, b}));
    std::sort(scores.begin(), scores.end(), [](const BeliefScore& x, const BeliefScore& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.pair < y.pair;
    });
    return scores;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty set");
    if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile outside [0, 100]");
    std::sort(values.begin(), values.end());
    const double pos = p / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

ConsensusGraph build_consensus(std::span<const CausalMap> dataset, double pct,
                               std::span<const std::string> vocabulary) {
    const auto scores = all_belief_scores(dataset, vocabulary);
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back(s.score);

    ConsensusGraph g;
    g.percentile = pct;
    g.threshold = percentile(values, pct);
    std::set<std::string> nodes;
    for (const auto& s : scores) {
        if (s.support == 0 || s.score < g.threshold) continue;
        g.edges.push_back(s);
        nodes.insert(s.pair.first);
        nodes.insert(s.pair.second);
    }
    g.nodes.assign(nodes.begin(), nodes.end());
    return g;
}

ConsensusGraph build_consensus(std::span<const CausalMap> dataset, double pct) {
    const auto vocab = canonical_ids();
    return build_consensus(dataset, pct, vocab);
}

std::string pair_scores_csv(const std::vector<BeliefScore>& scores) {
    std::string out = "cause,effect,score,support,mean_weight\n";
    for (const auto& s : scores) {
        out += fmt::format("{},{},{:.15g},{},", s.pair.first, s.pair.second, s.score, s.support);
        if (s.mean_explicit_weight) out += fmt::format("{:.15g}", *s.mean_explicit_weight);
        out += '\n';
    }
    return out;
}

}  // namespace cogmap
