#include "cogmap/pipeline.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "cogmap/dot.hpp"
#include "cogmap/statistics.hpp"
#include "cogmap/vocabulary.hpp"

namespace cogmap {

std::string_view to_string(CutRule r) {
    switch (r) {
        case CutRule::lca_classes: return "lca";
        case CutRule::fixed_k: return "k";
        case CutRule::height: return "height";
        case CutRule::relative: return "relative";
    }
    return "?";
}

CutRule cut_rule_from_string(std::string_view s) {
    if (s == "lca") return CutRule::lca_classes;
    if (s == "k") return CutRule::fixed_k;
    if (s == "height") return CutRule::height;
    if (s == "relative") return CutRule::relative;
    throw std::invalid_argument(fmt::format("unknown cut rule '{}' (expected lca, k, height or relative)", s));
}

void check_config(const RunConfig& c) {
    auto fail = [](std::string msg) { throw std::invalid_argument(std::move(msg)); };
    if (c.min_classes < 1) fail("min classes must be at least 1");
    if (c.max_classes < c.min_classes) fail("max classes must not be below min classes");
    if (c.restarts < 1) fail("restarts must be at least 1");
    if (c.max_iter < 1) fail("max iterations must be at least 1");
    if (!(c.tol > 0.0)) fail("tolerance must be positive");
    if (c.cut == CutRule::fixed_k && c.cut_k < 1) fail("cut k must be at least 1");
    if (c.cut == CutRule::height && !(c.cut_height >= 0.0)) fail("cut height must be non-negative");
    if (c.cut == CutRule::relative && !(c.cut_ratio > 0.0)) fail("cut ratio must be positive");
    if (c.min_size < 1) fail("min cluster size must be at least 1");
    if (c.percentiles.empty()) fail("at least one consensus percentile is required");
    for (double p : c.percentiles)
        if (!(p >= 0.0 && p <= 100.0)) fail(fmt::format("percentile {} outside [0,100]", p));
}

double median_distance(const DistanceMatrix& dist) {
    std::vector<double> v;
    for (std::size_t i = 0; i < dist.size(); ++i)
        for (std::size_t j = i + 1; j < dist.size(); ++j) v.push_back(dist.at(i, j));
    if (v.empty()) throw std::invalid_argument("median distance needs at least two points");
    return percentile(std::move(v), 50.0);
}

Analysis cluster_dataset(std::span<const CausalMap> dataset, const RunConfig& config) {
    check_config(config);
    if (dataset.size() < 2) throw std::invalid_argument("analysis needs at least two maps");
    Analysis a;
    for (const auto& m : dataset) a.ids.push_back(m.respondent_id);
    a.distances = distance_matrix(dataset);

    const FeatureMatrix f = features(dataset);
    EmConfig em;
    em.seed = config.seed;
    em.restarts = config.restarts;
    em.max_iter = config.max_iter;
    em.tol = config.tol;
    const std::size_t max_classes = std::min(config.max_classes, dataset.size());
    if (config.min_classes > max_classes) throw std::invalid_argument("min classes exceeds the number of maps");
    a.selection = select_classes(f, config.min_classes, max_classes, em);
    a.classes = assign(a.selection.best, f);

    a.dendrogram = build_dendrogram(a.distances, config.linkage);
    ClusterSet cut;
    switch (config.cut) {
        case CutRule::lca_classes: cut = cut_k(a.dendrogram, a.selection.best_classes); break;
        case CutRule::fixed_k: cut = cut_k(a.dendrogram, std::min(config.cut_k, dataset.size())); break;
        case CutRule::height: cut = cut_height(a.dendrogram, config.cut_height); break;
        case CutRule::relative: cut = cut_height(a.dendrogram, config.cut_ratio * median_distance(a.distances)); break;
    }
    a.hac = extend_clusters(drop_small_clusters(cut, config.min_size), a.distances);
    a.robust = combine(a.classes, a.hac, config.min_size);
    a.verdict = classify_stage(a.robust);
    return a;
}

namespace {

ConsensusSet consensus_for(std::string name, std::vector<std::size_t> members, std::span<const CausalMap> dataset,
                           const RunConfig& config) {
    ConsensusSet s;
    s.name = std::move(name);
    s.members = std::move(members);
    std::vector<CausalMap> subset;
    for (auto i : s.members) subset.push_back(dataset[i]);
    const auto vocab = canonical_ids();
    s.scores = all_belief_scores(subset, vocab);
    for (double p : config.percentiles) s.graphs.push_back(build_consensus(subset, p, vocab));
    return s;
}

std::string pct_tag(double p) { return fmt::format("p{:g}", p); }

}  // namespace

Analysis analyze(std::span<const CausalMap> dataset, const RunConfig& config) {
    Analysis a = cluster_dataset(dataset, config);
    std::vector<std::size_t> everyone(dataset.size());
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
    a.consensus.push_back(consensus_for("all", std::move(everyone), dataset, config));
    for (std::size_t k = 0; k < a.robust.clusters.size(); ++k)
        a.consensus.push_back(consensus_for(fmt::format("cluster_{}", k + 1), a.robust.clusters[k], dataset, config));
    return a;
}

std::map<std::string, std::string> render_reports(std::span<const CausalMap> dataset, const Analysis& a,
                                                  const RunConfig& config) {
    std::map<std::string, std::string> out;
    out["distance_matrix.csv"] = distance_matrix_csv(a.distances);
    out["aic_table.csv"] = aic_table_csv(a.selection);
    out["lca_assignments.csv"] = assignment_csv(a.classes);
    out["dendrogram.txt"] = dendrogram_tree_text(a.dendrogram);
    out["dendrogram_merges.csv"] = dendrogram_merges_csv(a.dendrogram);
    out["robust_clusters.csv"] = robust_membership_csv(a.robust);

    std::string verdict = verdict_report(a.robust, a.verdict);
    verdict += fmt::format("\nlatent classes (AIC): {}\nhierarchy cut: {}", a.selection.best_classes,
                           to_string(config.cut));
    if (config.cut == CutRule::fixed_k) verdict += fmt::format(" (k = {})", config.cut_k);
    if (config.cut == CutRule::height) verdict += fmt::format(" (height = {:g})", config.cut_height);
    if (config.cut == CutRule::relative)
        verdict += fmt::format(" (height = {:g} x median distance {:.6f})", config.cut_ratio,
                               median_distance(a.distances));
    verdict += fmt::format(", {} linkage\n", to_string(config.linkage));
    out["verdict.txt"] = verdict;

    const auto freq = construct_frequency(dataset);
    const auto rel = relationship_frequency(dataset);
    const auto infl = aggregate_influence(dataset);
    out["construct_frequency.csv"] = frequency_csv(freq, "fraction");
    out["relationship_frequency.csv"] = relationship_csv(rel);
    out["influence.csv"] = frequency_csv(infl, "influence");
    out["tables.txt"] = frequency_report(freq, "Most popular constructs (% of maps)") + "\n" +
                        relationship_report(rel, "Most popular relationships (% of maps)") + "\n" +
                        frequency_report(infl, "Aggregated transitive influence on SES", 1.0);

    for (const auto& s : a.consensus) {
        out[fmt::format("consensus/{}_pair_scores.csv", s.name)] = pair_scores_csv(s.scores);
        for (const auto& g : s.graphs)
            out[fmt::format("consensus/{}_{}.dot", s.name, pct_tag(g.percentile))] =
                consensus_to_dot(g, fmt::format("{} {}", s.name, pct_tag(g.percentile)));
    }
    return out;
}

std::string manifest_json(const RunConfig& c, std::span<const std::string> input_files,
                          const std::map<std::string, std::string>& reports) {
    nlohmann::ordered_json j;
    j["tool"] = "cogmap analyze";
    j["dataset"] = c.dataset.generic_string();
    j["inputs"] = input_files;
    j["config"] = {
        {"seed", c.seed},
        {"min_classes", c.min_classes},
        {"max_classes", c.max_classes},
        {"restarts", c.restarts},
        {"max_iter", c.max_iter},
        {"tol", c.tol},
        {"linkage", to_string(c.linkage)},
        {"cut", to_string(c.cut)},
        {"cut_k", c.cut_k},
        {"cut_height", c.cut_height},
        {"cut_ratio", c.cut_ratio},
        {"min_size", c.min_size},
        {"percentiles", c.percentiles},
    };
    std::vector<std::string> files;
    for (const auto& [name, content] : reports) files.push_back(name);
    j["outputs"] = files;
    return j.dump(2) + "\n";
}

}  // namespace cogmap
