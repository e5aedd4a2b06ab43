#include "cogmap/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cogmap/errors.hpp"
#include "cogmap/vocabulary.hpp"

namespace cogmap {

namespace {

void require_nonempty(std::span<const CausalMap> dataset) {
    if (dataset.empty()) throw std::invalid_argument("dataset is empty");
}

bool tabulated(std::string_view id) { return id == kSesId || is_canonical_id(id); }

// Sort key: canonical column, ses after every construct.
std::size_t column_of(std::string_view id) {
    if (auto j = canonical_index(id)) return *j;
    return kCanonicalCount;
}

void sort_descending(std::vector<FrequencyRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const FrequencyRow& a, const FrequencyRow& b) { return a.fraction > b.fraction; });
}

// Some cycle among nodes other than ses, rendered "a -> b -> a".
std::string describe_cycle(const CausalMap& map) {
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& e : map.edges)
        if (e.from != kSesId && e.to != kSesId) succ[e.from].push_back(e.to);
    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::string found;
    std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
        state[v] = 1;
        stack.push_back(v);
        for (const auto& w : succ[v]) {
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                for (; it != stack.end(); ++it) found += *it + " -> ";
                found += w;
                return true;
            }
            if (state[w] == 0 && dfs(w)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (const auto& n : map.nodes)
        if (state[n.id] == 0 && dfs(n.id)) return found;
    return "(no cycle found)";
}

}  // namespace

std::vector<FrequencyRow> construct_frequency(std::span<const CausalMap> dataset) {
    require_nonempty(dataset);
    std::vector<double> counts(kCanonicalCount, 0.0);
    for (const auto& m : dataset) {
        std::set<std::size_t> present;
        for (const auto& n : m.nodes)
            if (n.kind == NodeKind::construct)
                if (auto j = canonical_index(n.id)) present.insert(*j);
        for (auto j : present) counts[j] += 1.0;
    }
    std::vector<FrequencyRow> rows;
    const auto vocab = canonical_constructs();
    for (std::size_t j = 0; j < kCanonicalCount; ++j)
        rows.push_back({vocab[j].id, counts[j] / static_cast<double>(dataset.size())});
    sort_descending(rows);
    return rows;
}

std::vector<RelationshipRow> relationship_frequency(std::span<const CausalMap> dataset) {
    require_nonempty(dataset);
    std::map<std::pair<std::string, std::string>, int> counts;
    for (const auto& m : dataset) {
        std::set<std::pair<std::string, std::string>> present;
        for (const auto& e : m.edges)
            if (tabulated(e.from) && tabulated(e.to)) present.emplace(e.from, e.to);
        for (const auto& p : present) ++counts[p];
    }
    std::vector<RelationshipRow> rows;
    for (const auto& [pair, c] : counts)
        rows.push_back({pair.first, pair.second, static_cast<double>(c) / static_cast<double>(dataset.size())});
    std::sort(rows.begin(), rows.end(), [](const RelationshipRow& a, const RelationshipRow& b) {
        if (a.fraction != b.fraction) return a.fraction > b.fraction;
        const auto ka = std::make_pair(column_of(a.cause), column_of(a.effect));
        const auto kb = std::make_pair(column_of(b.cause), column_of(b.effect));
        if (ka != kb) return ka < kb;
        return std::tie(a.cause, a.effect) < std::tie(b.cause, b.effect);
    });
    return rows;
}

NormalizedWeights normalize_weights(const CausalMap& map) {
    NormalizedWeights u;
    std::map<std::string, double> total;
    for (const auto& e : map.edges) total[e.to] += static_cast<double>(e.magnitude * e.magnitude);
    for (const auto& e : map.edges)
        u[e.to][e.from] = static_cast<double>(e.magnitude * e.magnitude) / total[e.to];
    return u;
}

std::map<std::string, double> transitive_influence(const CausalMap& map, const InfluenceOptions& opts) {
    const auto u = normalize_weights(map);

    std::vector<std::string> ids;
    std::map<std::string, std::size_t> index;
    for (const auto& n : map.nodes) {
        index.emplace(n.id, ids.size());
        ids.push_back(n.id);
    }
    const auto ses = index.find(std::string(kSesId));
    if (ses == index.end()) throw std::invalid_argument("map has no ses node");

    struct Out {
        std::size_t to;
        double weight;
    };
    std::vector<std::vector<Out>> succ(ids.size());
    for (const auto& e : map.edges) {
        auto f = index.find(e.from), t = index.find(e.to);
        if (f == index.end() || t == index.end()) continue;
        succ[f->second].push_back({t->second, u.at(e.to).at(e.from)});
    }

    auto solve = [&](double damping, std::vector<double>& iota) {
        iota.assign(ids.size(), 0.0);
        iota[ses->second] = 1.0;
        std::vector<double> next(ids.size());
        for (int it = 0; it < opts.max_iter; ++it) {
            double delta = 0.0;
            for (std::size_t i = 0; i < ids.size(); ++i) {
                if (i == ses->second) {
                    next[i] = 1.0;
                    continue;
                }
                double v = 0.0;
                for (const auto& o : succ[i]) v += o.weight * iota[o.to];
                next[i] = damping * iota[i] + (1.0 - damping) * v;
                if (!std::isfinite(next[i])) return false;
                delta = std::max(delta, std::abs(next[i] - iota[i]));
            }
            iota.swap(next);
            if (delta < opts.tol) return true;
        }
        return false;
    };

    std::vector<double> iota;
    if (!solve(0.0, iota) && !solve(0.5, iota))
        throw NumericalError(fmt::format("influence in map '{}' does not converge around cycle {}",
                                         map.respondent_id, describe_cycle(map)));

    std::map<std::string, double> out;
    for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]] = iota[i];
    return out;
}

std::vector<FrequencyRow> aggregate_influence(std::span<const CausalMap> dataset, const InfluenceOptions& opts) {
    require_nonempty(dataset);
    std::vector<double> sums(kCanonicalCount, 0.0);
    for (const auto& m : dataset) {
        const auto iota = transitive_influence(m, opts);
        for (const auto& [id, v] : iota)
            if (auto j = canonical_index(id)) sums[*j] += v;
    }
    std::vector<FrequencyRow> rows;
    const auto vocab = canonical_constructs();
    for (std::size_t j = 0; j < kCanonicalCount; ++j)
        rows.push_back({vocab[j].id, 100.0 * sums[j] / static_cast<double>(dataset.size())});
    sort_descending(rows);
    return rows;
}

std::string frequency_csv(const std::vector<FrequencyRow>& rows, std::string_view value_header) {
    std::string out = fmt::format("construct,{}\n", value_header);
    for (const auto& r : rows) out += fmt::format("{},{:.15g}\n", r.construct, r.fraction);
    return out;
}

std::string relationship_csv(const std::vector<RelationshipRow>& rows) {
    std::string out = "cause,effect,fraction\n";
    for (const auto& r : rows) out += fmt::format("{},{},{:.15g}\n", r.cause, r.effect, r.fraction);
    return out;
}

std::string frequency_report(const std::vector<FrequencyRow>& rows, std::string_view title, double scale) {
    std::size_t width = 9;
    for (const auto& r : rows) width = std::max(width, display_label(r.construct).size());
    std::string out = fmt::format("{}\n\n{:<{}}  {:>6}\n", title, "Construct", width, "%");
    for (const auto& r : rows)
        out += fmt::format("{:<{}}  {:>6.0f}\n", display_label(r.construct), width, scale * r.fraction);
    return out;
}

std::string relationship_report(const std::vector<RelationshipRow>& rows, std::string_view title) {
    std::size_t wc = 5, we = 6;
    for (const auto& r : rows) {
        wc = std::max(wc, display_label(r.cause).size());
        we = std::max(we, display_label(r.effect).size());
    }
    std::string out = fmt::format("{}\n\n{:<{}}  {:<{}}  {:>6}\n", title, "Cause", wc, "Effect", we, "%");
    for (const auto& r : rows)
        out += fmt::format("{:<{}}  {:<{}}  {:>6.0f}\n", display_label(r.cause), wc, display_label(r.effect), we,
                           100.0 * r.fraction);
    return out;
}

}  // namespace cogmap
