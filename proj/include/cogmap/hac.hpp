#pragma once
// Agglomerative hierarchical clustering over a precomputed distance matrix.

#include <string>
#include <string_view>
#include <vector>

#include "cogmap/lsw.hpp"

namespace cogmap {

enum class Linkage { complete, single, average };

std::string_view to_string(Linkage l);
Linkage linkage_from_string(std::string_view s);  // throws std::invalid_argument

// Node numbering follows the usual convention: leaves are 0..n-1, the
// cluster created by merge k is n + k.
struct Merge {
    std::size_t left;
    std::size_t right;
    double height;
    std::size_t size;
};

struct Dendrogram {
    std::size_t leaves = 0;
    std::vector<Merge> merges;  // leaves - 1 entries
    std::vector<std::string> ids;
};

// Repeatedly merges the closest pair of clusters. Exact ties go to the pair
// whose smallest members come first. Throws std::invalid_argument on a
// malformed matrix or fewer than two points.
Dendrogram build_dendrogram(const DistanceMatrix& dist, Linkage linkage = Linkage::complete);

// Partition of point indices. Clusters are sorted by their smallest member
// and hold sorted members.
struct ClusterSet {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> unassigned;

    void normalize();
    bool operator==(const ClusterSet&) const = default;
};

ClusterSet cut_k(const Dendrogram& dendrogram, std::size_t k);
ClusterSet cut_height(const Dendrogram& dendrogram, double height);

// Largest pairwise distance inside a cluster (0 for singletons).
double max_intra_distance(const std::vector<std::size_t>& members, const DistanceMatrix& dist);

// Moves unassigned points into clusters whose diameter they would not
// increase, sweeping in ascending point order until nothing changes.
ClusterSet extend_clusters(const ClusterSet& clusters, const DistanceMatrix& dist);

// Dissolves clusters smaller than min_size into the unassigned set.
ClusterSet drop_small_clusters(const ClusterSet& clusters, std::size_t min_size);

std::string dendrogram_tree_text(const Dendrogram& d);
std::string dendrogram_merges_csv(const Dendrogram& d);

}  // namespace cogmap
