#include "cogmap/consensus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cogmap {

std::vector<std::size_t> RobustClusters::sizes() const {
    std::vector<std::size_t> s;
    for (const auto& c : clusters) s.push_back(c.size());
    return s;
}

std::vector<int> RobustClusters::labels() const {
    std::vector<int> out(ids.size(), -1);
    for (std::size_t k = 0; k < clusters.size(); ++k)
        for (std::size_t i : clusters[k]) out[i] = static_cast<int>(k);
    return out;
}

RobustClusters combine(const Assignment& lca, const ClusterSet& hac, std::size_t min_size) {
    const std::size_t n = lca.labels.size();
    if (hac.n != n)
        throw std::invalid_argument(
            fmt::format("LCA covers {} respondents but HAC covers {}", n, hac.n));

    struct Part {
        std::vector<std::size_t> members;
        std::pair<std::size_t, std::size_t> origin;
    };
    std::vector<Part> parts;
    std::vector<bool> covered(n, false);
    for (std::size_t h = 0; h < hac.clusters.size(); ++h) {
        for (std::size_t y = 0; y < lca.classes; ++y) {
            Part p{{}, {y, h}};
            for (std::size_t i : hac.clusters[h])
                if (lca.labels[i] == y) p.members.push_back(i);
            if (p.members.size() >= min_size && !p.members.empty()) {
                std::sort(p.members.begin(), p.members.end());
                for (std::size_t i : p.members) covered[i] = true;
                parts.push_back(std::move(p));
            }
        }
    }
    std::sort(parts.begin(), parts.end(),
              [](const Part& a, const Part& b) { return a.members.front() < b.members.front(); });

    RobustClusters r;
    r.ids = lca.ids;
    for (auto& p : parts) {
        r.clusters.push_back(std::move(p.members));
        r.provenance.push_back(p.origin);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i]) r.unclustered.push_back(i);
    return r;
}

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::H0: return "H0";
        case Stage::H1: return "H1";
        case Stage::H2: return "H2";
    }
    return "H0";
}

KuhnVerdict classify_stage(std::span<const std::size_t> cluster_sizes, std::size_t n) {
    if (n == 0) throw std::invalid_argument("population size must be positive");
    std::vector<std::size_t> sizes(cluster_sizes.begin(), cluster_sizes.end());
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (total > n) throw std::invalid_argument("clusters hold more members than the population");

    KuhnVerdict v;
    for (auto s : sizes) v.shares.push_back(static_cast<double>(s) / static_cast<double>(n));
    v.clustered_fraction = static_cast<double>(total) / static_cast<double>(n);

    const std::size_t largest = sizes.empty() ? 0 : sizes.front();
    if (100 * largest >= 95 * n) {
        v.stage = Stage::H2;
        v.qualifier = kNormalScience;
    } else if (2 * largest >= n) {
        v.stage = Stage::H2;
        v.qualifier = kTransitioning;
    } else if (2 * total >= n && sizes.size() >= 2) {
        v.stage = Stage::H1;
        if (3 * (n - total) >= n) v.qualifier = kBetweenStages;
    } else {
        v.stage = Stage::H0;
    }
    return v;
}

KuhnVerdict classify_stage(const RobustClusters& robust) {
    const auto sizes = robust.sizes();
    return classify_stage(sizes, robust.ids.size());
}

std::string KuhnVerdict::describe() const {
    std::string s(to_string(stage));
    if (!qualifier.empty()) s += fmt::format(" ({})", qualifier);
    return s;
}

std::string robust_membership_csv(const RobustClusters& robust) {
    std::string out = "respondent_id,robust_cluster\n";
    const auto labels = robust.labels();
    for (std::size_t i = 0; i < robust.ids.size(); ++i) {
        if (labels[i] < 0)
            out += fmt::format("{},-\n", robust.ids[i]);
        else
            out += fmt::format("{},{}\n", robust.ids[i], labels[i] + 1);
    }
    return out;
}

std::string verdict_report(const RobustClusters& robust, const KuhnVerdict& verdict) {
    const std::size_t n = robust.ids.size();
    std::string out;
    out += fmt::format("Consensus stage: {}\n", verdict.describe());
    out += fmt::format("Respondents: {}\n", n);
    out += fmt::format("Robust clusters: {}\n", robust.clusters.size());
    for (std::size_t k = 0; k < robust.clusters.size(); ++k) {
        std::vector<std::string> names;
        for (std::size_t i : robust.clusters[k]) names.push_back(robust.ids[i]);
        out += fmt::format("  cluster {}: {} maps ({:.1f}%), LCA class {}, HAC cluster {}\n", k + 1,
                           robust.clusters[k].size(),
                           100.0 * static_cast<double>(robust.clusters[k].size()) / static_cast<double>(n),
                           robust.provenance[k].first, robust.provenance[k].second);
        out += "    ";
        for (std::size_t j = 0; j < names.size(); ++j) out += (j ? ", " : "") + names[j];
        out += '\n';
    }
    out += fmt::format("Clustered: {:.1f}%  Unclustered: {} maps\n", 100.0 * verdict.clustered_fraction,
                       robust.unclustered.size());
    return out;
}

}  // namespace cogmap
