#pragma once
// Robust clusters (agreement of latent classes and distance-based clusters)
// and the Kuhnian consensus stage they indicate.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cogmap/hac.hpp"
#include "cogmap/lca.hpp"

namespace cogmap {

struct RobustClusters {
    std::vector<std::string> ids;                  // respondent universe
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> unclustered;
    std::vector<std::pair<std::size_t, std::size_t>> provenance;  // (LCA class, HAC cluster index)

    std::vector<std::size_t> sizes() const;
    // Robust cluster index per respondent, or -1.
    std::vector<int> labels() const;
};

// Intersections of LCA classes with HAC clusters of at least min_size
// members; everyone else is unclustered. Throws std::invalid_argument if the
// two results cover different numbers of respondents.
RobustClusters combine(const Assignment& lca, const ClusterSet& hac, std::size_t min_size = 4);

enum class Stage { H0, H1, H2 };

std::string_view to_string(Stage s);

inline constexpr std::string_view kNormalScience = "normal science";
inline constexpr std::string_view kTransitioning = "transitioning stage 2→3";
inline constexpr std::string_view kBetweenStages = "between stages 1 and 2";

struct KuhnVerdict {
    Stage stage = Stage::H0;
    std::string qualifier;          // empty when none applies
    std::vector<double> shares;     // cluster size / n, descending
    double clustered_fraction = 0.0;

    std::string describe() const;
};

// Rules, with shares s_1 >= s_2 >= ... and T their sum:
//   s_1 >= 0.95                     -> H2, normal science
//   s_1 >= 0.50                     -> H2, transitioning stage 2->3
//   T >= 0.50 with >= 2 clusters    -> H1 (between stages 1 and 2 if >= 1/3 unclustered)
//   otherwise                       -> H0
// Thresholds are compared in integer arithmetic, so the verdict is exact and
// invariant under scaling sizes and n together.
KuhnVerdict classify_stage(std::span<const std::size_t> cluster_sizes, std::size_t n);
KuhnVerdict classify_stage(const RobustClusters& robust);

std::string robust_membership_csv(const RobustClusters& robust);
std::string verdict_report(const RobustClusters& robust, const KuhnVerdict& verdict);

}  // namespace cogmap
