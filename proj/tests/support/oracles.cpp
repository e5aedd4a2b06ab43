#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "cogmap/vocabulary.hpp"

namespace oracle {

using cogmap::CausalMap;
using cogmap::Edge;
using cogmap::Node;
using cogmap::NodeKind;
using cogmap::Sign;

CausalMap random_map(cogmap::Rng& rng, const std::string& respondent, const RandomMapOptions& opts) {
    CausalMap m;
    m.respondent_id = respondent;
    m.nodes.push_back({"ses", NodeKind::ses, std::nullopt, std::nullopt});

    auto pool = cogmap::canonical_ids();
    const auto count = static_cast<std::size_t>(
        rng.between(static_cast<int>(opts.min_constructs), static_cast<int>(opts.max_constructs)));
    std::vector<std::string> order;  // order[i] may point at order[j] for j > i, or at ses
    int customs = 0;
    for (std::size_t k = 0; k < count; ++k) {
        if (rng.bernoulli(opts.custom_share)) {
            order.push_back("custom:extra_" + std::to_string(++customs));
            m.nodes.push_back({order.back(), NodeKind::custom, std::nullopt, std::nullopt});
        } else {
            const auto pick = rng.below(pool.size());
            order.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
            m.nodes.push_back({order.back(), NodeKind::construct, std::nullopt, std::nullopt});
        }
    }
    auto signed_edge = [&](const std::string& from, const std::string& to) {
        const int mag = rng.between(1, 3);
        m.edges.push_back({from, to, mag, rng.bernoulli(0.5) ? Sign::positive : Sign::negative});
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t later = order.size() - i - 1;
        const std::size_t t = rng.below(later + 1);  // later == t means ses
        const std::string target = t == later ? "ses" : order[i + 1 + t];
        signed_edge(order[i], target);
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[j] != target && rng.bernoulli(opts.extra_edge)) signed_edge(order[i], order[j]);
        if (target != "ses" && rng.bernoulli(opts.extra_edge)) signed_edge(order[i], "ses");
    }
    std::set<std::string> targets;
    for (const auto& e : m.edges) targets.insert(e.to);
    for (const auto& t : targets) {
        if (!rng.bernoulli(opts.other_card)) continue;
        const std::string id = "other:" + t;
        m.nodes.push_back({id, NodeKind::other, t, std::nullopt});
        m.edges.push_back({id, t, rng.between(1, 3), Sign::unknown});
    }
    return m;
}

int weight(const CausalMap& m, const std::string& from, const std::string& to) {
    for (const auto& e : m.edges)
        if (e.from == from && e.to == to) return e.sign == Sign::negative ? -e.magnitude : e.magnitude;
    return 0;
}

namespace {

std::set<std::string> elements(const CausalMap& m) {
    std::set<std::string> s;
    for (const auto& n : m.nodes)
        if (n.kind != NodeKind::other) s.insert(n.id);
    return s;
}

}  // namespace

LswParts brute_lsw(const CausalMap& a, const CausalMap& b) {
    const auto ea = elements(a), eb = elements(b);
    std::set<std::string> all = ea;
    all.insert(eb.begin(), eb.end());
    auto common = [&](const std::string& id) { return ea.count(id) && eb.count(id); };
    auto cap = [](int v) { return v > 0 ? 1 : v < 0 ? -1 : 0; };
    LswParts out;
    for (const auto& i : all) {
        for (const auto& j : all) {
            if (i == j) continue;
            int va = weight(a, i, j), vb = weight(b, i, j);
            const bool both_common = common(i) && common(j);
            if (!both_common) {
                va = cap(va);
                vb = cap(vb);
            }
            out.numerator += std::abs(va - vb);
            if (both_common)
                out.max_numerator += 6;
            else if ((ea.count(i) && ea.count(j)) || (eb.count(i) && eb.count(j)))
                out.max_numerator += 1;
        }
    }
    return out;
}

std::map<std::string, double> path_influence(const CausalMap& m) {
    // u(from -> to) = w^2 / sum of squared in-weights at `to`.
    std::map<std::string, double> in_norm;
    for (const auto& e : m.edges) in_norm[e.to] += static_cast<double>(e.magnitude) * e.magnitude;
    std::map<std::string, std::vector<std::pair<std::string, double>>> out_edges;
    for (const auto& e : m.edges)
        out_edges[e.from].push_back({e.to, static_cast<double>(e.magnitude) * e.magnitude / in_norm[e.to]});

    std::map<std::string, double> result;
    for (const auto& n : m.nodes) {
        double total = 0.0;
        // Depth-first enumeration of every path; maps are acyclic.
        std::vector<std::pair<std::string, double>> stack{{n.id, 1.0}};
        while (!stack.empty()) {
            auto [at, product] = stack.back();
            stack.pop_back();
            if (at == "ses") {
                total += product;
                continue;
            }
            for (const auto& [to, u] : out_edges[at]) stack.push_back({to, product * u});
        }
        result[n.id] = total;
    }
    return result;
}

double grid_score(std::span<const CausalMap> dataset, const cogmap::PairKey& pair, int points) {
    // Midpoint rule: cell centres never coincide with the half-integer range
    // endpoints, where the strict-containment belief function jumps.
    const double lo = cogmap::kWeightDomainLo, hi = cogmap::kWeightDomainHi;
    const double h = (hi - lo) / points;
    double integral = 0.0;
    for (int k = 0; k < points; ++k) integral += cogmap::belief_function(dataset, pair, lo + (k + 0.5) * h);
    integral *= h;
    return integral / (hi - lo) / static_cast<double>(dataset.size());
}

}  // namespace oracle
