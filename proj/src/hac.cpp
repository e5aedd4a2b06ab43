#include "cogmap/hac.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cogmap {

std::string_view to_string(Linkage l) {
    switch (l) {
        case Linkage::complete: return "complete";
        case Linkage::single: return "single";
        case Linkage::average: return "average";
    }
    return "complete";
}

Linkage linkage_from_string(std::string_view s) {
    if (s == "complete") return Linkage::complete;
    if (s == "single") return Linkage::single;
    if (s == "average") return Linkage::average;
    throw std::invalid_argument(fmt::format("unknown linkage '{}'", s));
}

Dendrogram build_dendrogram(const DistanceMatrix& dist, Linkage linkage) {
    check_distance_matrix(dist);
    const std::size_t n = dist.size();
    if (n < 2) throw std::invalid_argument("clustering needs at least two points");

    struct Active {
        std::size_t node;
        std::size_t size;
    };
    // Kept ordered by smallest member: a merge keeps the left slot, which
    // already holds the smaller minimum.
    std::vector<Active> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = {i, 1};
    // Lance-Williams cluster distances indexed by slot.
    std::vector<std::vector<double>> D(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) D[i][j] = dist.at(i, j);

    Dendrogram out;
    out.leaves = n;
    out.ids = dist.ids;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t ba = 0, bb = 1;
        double best = D[0][1];
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t b = a + 1; b < active.size(); ++b)
                if (D[a][b] < best) {
                    best = D[a][b];
                    ba = a;
                    bb = b;
                }

        const std::size_t sa = active[ba].size, sb = active[bb].size;
        out.merges.push_back({active[ba].node, active[bb].node, best, sa + sb});

        for (std::size_t c = 0; c < active.size(); ++c) {
            if (c == ba || c == bb) continue;
            double v = 0.0;
            switch (linkage) {
                case Linkage::complete: v = std::max(D[ba][c], D[bb][c]); break;
                case Linkage::single: v = std::min(D[ba][c], D[bb][c]); break;
                case Linkage::average:
                    v = (static_cast<double>(sa) * D[ba][c] + static_cast<double>(sb) * D[bb][c]) /
                        static_cast<double>(sa + sb);
                    break;
            }
            D[ba][c] = D[c][ba] = v;
        }
        active[ba] = {n + step, sa + sb};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bb));
        D.erase(D.begin() + static_cast<std::ptrdiff_t>(bb));
        for (auto& row : D) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bb));
    }
    return out;
}

void ClusterSet::normalize() {
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    clusters.erase(std::remove_if(clusters.begin(), clusters.end(), [](const auto& c) { return c.empty(); }),
                   clusters.end());
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::sort(unassigned.begin(), unassigned.end());
}

namespace {

ClusterSet apply_merges(const Dendrogram& d, std::size_t count) {
    const std::size_t n = d.leaves;
    std::vector<std::size_t> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t k = 0; k < count; ++k) {
        const auto& m = d.merges[k];
        parent[find(m.left)] = n + k;
        parent[find(m.right)] = n + k;
    }
    std::vector<std::vector<std::size_t>> groups(2 * n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    ClusterSet cs;
    cs.n = n;
    for (auto& g : groups)
        if (!g.empty()) cs.clusters.push_back(std::move(g));
    cs.normalize();
    return cs;
}

}  // namespace

ClusterSet cut_k(const Dendrogram& d, std::size_t k) {
    if (k < 1 || k > d.leaves)
        throw std::invalid_argument(fmt::format("cannot cut {} points into {} clusters", d.leaves, k));
    return apply_merges(d, d.leaves - k);
}

ClusterSet cut_height(const Dendrogram& d, double height) {
    if (!(height >= 0.0)) throw std::invalid_argument("cut height must be non-negative");
    std::size_t count = 0;
    while (count < d.merges.size() && d.merges[count].height <= height) ++count;
    return apply_merges(d, count);
}

double max_intra_distance(const std::vector<std::size_t>& members, const DistanceMatrix& dist) {
    double mx = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) mx = std::max(mx, dist.at(members[a], members[b]));
    return mx;
}

ClusterSet extend_clusters(const ClusterSet& in, const DistanceMatrix& dist) {
    ClusterSet cs = in;
    cs.normalize();
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> still;
        for (std::size_t p : cs.unassigned) {
            bool placed = false;
            for (auto& c : cs.clusters) {
                const double diameter = max_intra_distance(c, dist);
                double reach = 0.0;
                for (std::size_t q : c) reach = std::max(reach, dist.at(p, q));
                if (reach <= diameter) {
                    c.push_back(p);
                    placed = changed = true;
                    break;
                }
            }
            if (!placed) still.push_back(p);
        }
        cs.unassigned = std::move(still);
        cs.normalize();
    }
    return cs;
}

ClusterSet drop_small_clusters(const ClusterSet& in, std::size_t min_size) {
    ClusterSet cs;
    cs.n = in.n;
    cs.unassigned = in.unassigned;
    for (const auto& c : in.clusters) {
        if (c.size() >= min_size)
            cs.clusters.push_back(c);
        else
            cs.unassigned.insert(cs.unassigned.end(), c.begin(), c.end());
    }
    cs.normalize();
    return cs;
}

std::string dendrogram_tree_text(const Dendrogram& d) {
    std::string out;
    std::function<void(std::size_t, int)> emit = [&](std::size_t node, int depth) {
        const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
        if (node < d.leaves) {
            out += fmt::format("{}{}\n", indent, node < d.ids.size() ? d.ids[node] : std::to_string(node));
            return;
        }
        const auto& m = d.merges[node - d.leaves];
        out += fmt::format("{}+ {:.6f} ({} maps)\n", indent, m.height, m.size);
        emit(m.left, depth + 1);
        emit(m.right, depth + 1);
    };
    if (d.merges.empty()) {
        if (d.leaves == 1) emit(0, 0);
    } else {
        emit(d.leaves + d.merges.size() - 1, 0);
    }
    return out;
}

std::string dendrogram_merges_csv(const Dendrogram& d) {
    std::string out = "left,right,height,size\n";
    for (const auto& m : d.merges) out += fmt::format("{},{},{:.15g},{}\n", m.left, m.right, m.height, m.size);
    return out;
}

}  // namespace cogmap
