// cogmap: command-line front end for causal-map analysis.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cogmap/belief.hpp"
#include "cogmap/dot.hpp"
#include "cogmap/errors.hpp"
#include "cogmap/map_io.hpp"
#include "cogmap/pipeline.hpp"
#include "cogmap/statistics.hpp"
#include "cogmap/synthetic.hpp"
#include "cogmap/vocabulary.hpp"

namespace fs = std::filesystem;
using namespace cogmap;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<fs::path> collect_files(const std::vector<std::string>& paths) {
    std::vector<fs::path> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            const auto found = list_map_files(p);
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(p)) {
            files.emplace_back(p);
        } else {
            throw UsageError(fmt::format("'{}' does not exist", p));
        }
    }
    if (files.empty()) throw UsageError("no maps found");
    return files;
}

std::vector<CausalMap> require_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw UsageError(fmt::format("'{}' is not a directory", dir.string()));
    auto maps = load_dataset(dir);
    if (maps.empty()) throw UsageError("no maps found");
    return maps;
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        write_text_file(out, content);
}

void write_bundle(const fs::path& dir, const std::map<std::string, std::string>& files) {
    for (const auto& [name, content] : files) write_text_file(dir / name, content);
}

int cmd_validate(const std::vector<std::string>& paths) {
    int failures = 0;
    for (const auto& f : collect_files(paths)) {
        ValidationReport report;
        try {
            report = validate(read_map(read_text_file(f)));
        } catch (const ParseError& e) {
            std::cout << fmt::format("{}: error: {}\n", f.string(), e.what());
            ++failures;
            continue;
        }
        if (report.ok()) {
            std::cout << fmt::format("{}: ok", f.string());
            if (!report.warnings.empty()) std::cout << fmt::format(" ({} warnings)", report.warnings.size());
            std::cout << "\n";
        } else {
            std::cout << fmt::format("{}: {} errors\n", f.string(), report.errors.size());
            ++failures;
        }
        for (const auto& i : report.errors) std::cout << fmt::format("  error: {}\n", i.message);
        for (const auto& i : report.warnings) std::cout << fmt::format("  warning: {}\n", i.message);
    }
    return failures ? kExitValidation : 0;
}

void add_cluster_options(CLI::App* cmd, RunConfig& c, std::string& linkage, std::string& cut) {
    cmd->add_option("--seed", c.seed, "Root seed for EM restarts")->capture_default_str();
    cmd->add_option("--min-classes", c.min_classes, "Smallest class count tried by AIC")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-classes", c.max_classes, "Largest class count tried by AIC")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--restarts", c.restarts, "EM restarts per class count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iter", c.max_iter, "EM iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--tol", c.tol, "EM convergence tolerance on the log-likelihood")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--linkage", linkage, "Hierarchical linkage")
        ->check(CLI::IsMember({"complete", "single", "average"}))
        ->capture_default_str();
    cmd->add_option("--cut", cut, "Dendrogram cut rule")
        ->check(CLI::IsMember({"relative", "lca", "k", "height"}))
        ->capture_default_str();
    cmd->add_option("--cut-k", c.cut_k, "Cluster count for --cut k")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--cut-height", c.cut_height, "Merge height for --cut height")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--cut-ratio", c.cut_ratio, "Height as a multiple of the median distance for --cut relative")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--min-size", c.min_size, "Smallest robust cluster")->check(CLI::PositiveNumber)->capture_default_str();
}

void finish_config(RunConfig& c, const std::string& linkage, const std::string& cut) {
    c.linkage = linkage_from_string(linkage);
    c.cut = cut_rule_from_string(cut);
    check_config(c);
}

std::vector<std::string> input_names(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& f : list_map_files(dir)) names.push_back(f.filename().generic_string());
    return names;
}

int run(int argc, char** argv) {
    CLI::App app{"Cognitive causal map analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML or INI file; options go in a section named after the subcommand");

    // validate
    std::vector<std::string> validate_paths;
    auto* validate_cmd = app.add_subcommand("validate", "Check map files against the format invariants");
    validate_cmd->add_option("paths", validate_paths, "Map files or directories")->required();

    // analyze
    RunConfig cfg;
    std::string linkage = "complete", cut = "relative", dataset, out;
    auto* analyze_cmd = app.add_subcommand("analyze", "Run the full analysis and write a report bundle");
    analyze_cmd->add_option("dataset", dataset, "Directory of map files")->required();
    analyze_cmd->add_option("-o,--out", out, "Output directory")->required();
    add_cluster_options(analyze_cmd, cfg, linkage, cut);
    analyze_cmd->add_option("--percentiles", cfg.percentiles, "Consensus percentiles")->capture_default_str();

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "Latent classes, hierarchy, robust clusters and verdict");
    cluster_cmd->add_option("dataset", dataset, "Directory of map files")->required();
    cluster_cmd->add_option("-o,--out", out, "Output directory")->required();
    add_cluster_options(cluster_cmd, cfg, linkage, cut);

    // simulate
    std::string spec_file, preset;
    std::uint64_t sim_seed = 1;
    auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic dataset with planted schools");
    auto* spec_opt = simulate_cmd->add_option("--spec", spec_file, "Population spec (JSON)");
    auto* preset_opt = simulate_cmd->add_option("--preset", preset, "Built-in population")->check(
        CLI::IsMember({"three-schools"}));
    spec_opt->excludes(preset_opt);
    simulate_cmd->add_option("--seed", sim_seed, "Seed, overrides the spec's seed when given");
    simulate_cmd->add_option("-o,--out", out, "Output directory")->required();

    // export-dot
    std::string source;
    double dot_percentile = -1.0;
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz export of maps or of a consensus graph");
    dot_cmd->add_option("source", source, "Map file or directory")->required();
    dot_cmd->add_option("--consensus", dot_percentile, "Export the consensus graph at this percentile instead")
        ->check(CLI::Range(0.0, 100.0));
    dot_cmd->add_option("-o,--out", out, "Output file (single map or consensus) or directory");

    // distance
    auto* distance_cmd = app.add_subcommand("distance", "Pairwise distance matrix as CSV");
    distance_cmd->add_option("dataset", dataset, "Directory of map files")->required();
    distance_cmd->add_option("-o,--out", out, "Output file (default stdout)");

    // consensus
    std::vector<double> percentiles{97.0, 98.0, 99.0};
    auto* consensus_cmd = app.add_subcommand("consensus", "Belief scores and consensus graphs");
    consensus_cmd->add_option("dataset", dataset, "Directory of map files")->required();
    consensus_cmd->add_option("-o,--out", out, "Output directory")->required();
    consensus_cmd->add_option("--percentiles", percentiles, "Consensus percentiles")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();

    // influence
    auto* influence_cmd = app.add_subcommand("influence", "Transitive influence on SES");
    influence_cmd->add_option("source", source, "Map file (per node) or directory (aggregate)")->required();
    influence_cmd->add_option("-o,--out", out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*validate_cmd) return cmd_validate(validate_paths);

    if (*analyze_cmd || *cluster_cmd) {
        finish_config(cfg, linkage, cut);
        cfg.dataset = dataset;
        cfg.output = out;
        const auto maps = require_dataset(dataset);
        if (*analyze_cmd) {
            const auto result = analyze(maps, cfg);
            auto reports = render_reports(maps, result, cfg);
            write_bundle(out, reports);
            write_text_file(fs::path(out) / "manifest.json", manifest_json(cfg, input_names(dataset), reports));
            std::cout << result.verdict.describe() << "\n";
        } else {
            const auto result = cluster_dataset(maps, cfg);
            write_bundle(out, {{"aic_table.csv", aic_table_csv(result.selection)},
                               {"lca_assignments.csv", assignment_csv(result.classes)},
                               {"dendrogram.txt", dendrogram_tree_text(result.dendrogram)},
                               {"dendrogram_merges.csv", dendrogram_merges_csv(result.dendrogram)},
                               {"robust_clusters.csv", robust_membership_csv(result.robust)},
                               {"verdict.txt", verdict_report(result.robust, result.verdict)}});
            std::cout << result.verdict.describe() << "\n";
        }
        return 0;
    }

    if (*simulate_cmd) {
        PopulationSpec spec;
        if (!spec_file.empty())
            spec = parse_population_spec(read_text_file(spec_file), fs::path(spec_file).parent_path().string());
        else if (!preset.empty())
            spec = three_school_spec(sim_seed);
        else
            throw UsageError("simulate needs --spec or --preset");
        if (simulate_cmd->count("--seed")) spec.seed = sim_seed;
        const auto pop = generate(spec);
        for (const auto& m : pop.maps) write_map_file(fs::path(out) / (m.respondent_id + ".json"), m);
        write_text_file(fs::path(out) / "labels.csv", labels_csv(pop));
        std::cout << fmt::format("wrote {} maps to {}\n", pop.maps.size(), out);
        return 0;
    }

    if (*dot_cmd) {
        if (dot_percentile >= 0.0) {
            const auto maps = require_dataset(source);
            const auto graph = build_consensus(maps, dot_percentile);
            emit(out, consensus_to_dot(graph, fmt::format("consensus p{:g}", dot_percentile)));
        } else if (fs::is_directory(source)) {
            if (out.empty()) throw UsageError("exporting a directory needs --out");
            const auto maps = require_dataset(source);
            for (const auto& m : maps) write_text_file(fs::path(out) / (m.respondent_id + ".dot"), map_to_dot(m));
            std::cout << fmt::format("wrote {} DOT files to {}\n", maps.size(), out);
        } else {
            emit(out, map_to_dot(load_map_file(source)));
        }
        return 0;
    }

    if (*distance_cmd) {
        emit(out, distance_matrix_csv(distance_matrix(require_dataset(dataset))));
        return 0;
    }

    if (*consensus_cmd) {
        const auto maps = require_dataset(dataset);
        std::map<std::string, std::string> files;
        files["pair_scores.csv"] = pair_scores_csv(all_belief_scores(maps, canonical_ids()));
        for (double p : percentiles) {
            const auto g = build_consensus(maps, p);
            files[fmt::format("consensus_p{:g}.dot", p)] = consensus_to_dot(g, fmt::format("consensus p{:g}", p));
            std::cout << fmt::format("percentile {:g}: threshold {:.6f}, {} edges\n", p, g.threshold, g.edges.size());
        }
        write_bundle(out, files);
        return 0;
    }

    if (*influence_cmd) {
        if (fs::is_directory(source)) {
            emit(out, frequency_csv(aggregate_influence(require_dataset(source)), "influence"));
        } else {
            std::string csv = "node,influence\n";
            for (const auto& [id, v] : transitive_influence(load_map_file(source)))
                csv += fmt::format("{},{:.15g}\n", id, v);
            emit(out, csv);
        }
        return 0;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
