#pragma once
// End-to-end analysis: distances, latent classes, hierarchy, robust
// clusters, verdict, popularity tables and consensus graphs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/belief.hpp"
#include "cogmap/consensus.hpp"
#include "cogmap/hac.hpp"
#include "cogmap/lca.hpp"
#include "cogmap/lsw.hpp"

namespace cogmap {

// How the hierarchy is cut before it is intersected with the latent classes.
//   lca_classes: k = number of classes chosen by AIC
//   fixed_k:     k = RunConfig::cut_k
//   height:      all merges at or below RunConfig::cut_height
//   relative:    height = RunConfig::cut_ratio * median pairwise distance
enum class CutRule { lca_classes, fixed_k, height, relative };

std::string_view to_string(CutRule r);
CutRule cut_rule_from_string(std::string_view s);  // throws std::invalid_argument

struct RunConfig {
    std::filesystem::path dataset;
    std::filesystem::path output;
    std::uint64_t seed = 1;
    std::size_t min_classes = 1;
    std::size_t max_classes = 6;
    int restarts = 20;
    int max_iter = 500;
    double tol = 1e-8;
    Linkage linkage = Linkage::complete;
    CutRule cut = CutRule::relative;
    std::size_t cut_k = 3;
    double cut_height = 0.05;
    double cut_ratio = 0.55;
    std::size_t min_size = 4;
    std::vector<double> percentiles{97.0, 98.0, 99.0};
};

// Throws std::invalid_argument naming the first out-of-range field.
void check_config(const RunConfig& config);

struct ConsensusSet {
    std::string name;  // "all" or "cluster_<k>"
    std::vector<std::size_t> members;
    std::vector<BeliefScore> scores;
    std::vector<ConsensusGraph> graphs;  // one per configured percentile
};

struct Analysis {
    std::vector<std::string> ids;
    DistanceMatrix distances;
    ClassSelection selection;
    Assignment classes;
    Dendrogram dendrogram;
    ClusterSet hac;  // cut, small parts dissolved, then extended
    RobustClusters robust;
    KuhnVerdict verdict;
    std::vector<ConsensusSet> consensus;
};

// Median of the off-diagonal entries.
double median_distance(const DistanceMatrix& dist);

// Clustering and verdict only.
Analysis cluster_dataset(std::span<const CausalMap> dataset, const RunConfig& config);

// Everything, consensus graphs included. Needs at least two maps.
Analysis analyze(std::span<const CausalMap> dataset, const RunConfig& config);

// Report bundle keyed by relative file name. Contents depend only on the
// dataset, the config and the seed.
std::map<std::string, std::string> render_reports(std::span<const CausalMap> dataset, const Analysis& analysis,
                                                  const RunConfig& config);

std::string manifest_json(const RunConfig& config, std::span<const std::string> input_files,
                          const std::map<std::string, std::string>& reports);

}  // namespace cogmap
