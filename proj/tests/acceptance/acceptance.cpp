// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Optional argv[1]: path to the cogmap CLI, used for the
// determinism check; without it the check runs in process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unistd.h>

#include "builders.hpp"
#include "cogmap/belief.hpp"
#include "cogmap/consensus.hpp"
#include "cogmap/lca.hpp"
#include "cogmap/lsw.hpp"
#include "cogmap/map_io.hpp"
#include "cogmap/metrics.hpp"
#include "cogmap/pipeline.hpp"
#include "cogmap/statistics.hpp"
#include "cogmap/synthetic.hpp"
#include "cogmap/vocabulary.hpp"
#include "oracles.hpp"

using namespace cogmap;
using testing_support::make_map;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string cli_path;

Outcome lsw_suite() {
    Outcome o;
    Rng rng(1);
    std::size_t bad_identity = 0, bad_symmetry = 0, bad_bounds = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto a = oracle::random_map(rng, "a");
        const auto b = oracle::random_map(rng, "b");
        if (lsw(a, a) != 0.0 || lsw(b, b) != 0.0) ++bad_identity;
        const double ab = lsw(a, b), ba = lsw(b, a);
        if (ab != ba) ++bad_symmetry;
        if (!(ab >= 0.0 && ab <= 1.0)) ++bad_bounds;
    }
    const auto plus = load_map_file(fs::path(COGMAP_TEST_DATA) / "fixtures/x_plus3.json");
    const auto minus = load_map_file(fs::path(COGMAP_TEST_DATA) / "fixtures/x_minus3.json");
    const double f1 = lsw(plus, minus);
    const double f2 = lsw(make_map("a", {"team_quality"}, {{"team_quality", "ses", 2}}),
                          make_map("b", {"financial_risk"}, {{"financial_risk", "ses", 1}}));
    o.pass = bad_identity == 0 && bad_symmetry == 0 && bad_bounds == 0 && std::abs(f1 - 0.5) <= 1e-12 &&
             std::abs(f2 - 0.5) <= 1e-12;
    o.detail = fmt::format("1000 pairs: identity {} / symmetry {} / bounds {} violations; fixtures {} and {}",
                           bad_identity, bad_symmetry, bad_bounds, f1, f2);
    return o;
}

// Every ordered cell gets its largest possible disagreement: +3 against -3
// between common elements, a unit arrow against nothing when an element is
// unique to one map.
Outcome max_distance() {
    Outcome o;
    Rng rng(2);
    const auto vocab = canonical_ids();
    int attained = 0;
    double worst = 0.0;
    const int trials = 25;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::string> pool(vocab.begin(), vocab.end());
        for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
        const std::size_t pc = rng.below(5), pu1 = rng.below(5), pu2 = rng.below(5);
        std::vector<std::string> common{std::string(kSesId)}, ua, ub;
        std::size_t next = 0;
        for (std::size_t i = 0; i < pc; ++i) common.push_back(pool[next++]);
        for (std::size_t i = 0; i < pu1; ++i) ua.push_back(pool[next++]);
        for (std::size_t i = 0; i < pu2; ++i) ub.push_back(pool[next++]);
        if (common.size() + ua.size() + ub.size() < 3) ua.push_back(pool[next++]);

        auto build = [&](const std::string& id, const std::vector<std::string>& unique, int common_w) {
            std::vector<std::string> all = common;
            all.insert(all.end(), unique.begin(), unique.end());
            std::vector<std::string> constructs(all.begin() + 1, all.end());
            std::vector<testing_support::E> edges;
            for (const auto& x : all)
                for (const auto& y : all) {
                    if (x == y) continue;
                    const bool is_common = std::count(common.begin(), common.end(), x) &&
                                           std::count(common.begin(), common.end(), y);
                    edges.push_back({x, y, is_common ? common_w : 1});
                }
            return make_map(id, constructs, edges);
        };
        const auto a = build("a", ua, 3);
        const auto b = build("b", ub, -3);
        const double dr = lsw(a, b);
        worst = std::max(worst, std::abs(dr - 1.0));
        if (std::abs(dr - 1.0) <= 1e-12) ++attained;
    }
    o.pass = attained == trials && trials >= 20;
    o.detail = fmt::format("{}/{} random partitions reach DR = 1 (worst error {:.3g})", attained, trials, worst);
    return o;
}

Outcome em_correctness() {
    Outcome o;
    Rng rng(3);
    double worst_drop = 0.0;
    int bad_runs = 0;
    for (int run = 0; run < 100; ++run) {
        const std::size_t classes = 1 + rng.below(3);
        std::vector<std::vector<double>> profiles(classes, std::vector<double>(28));
        for (auto& p : profiles)
            for (auto& v : p) v = 0.05 + 0.9 * rng.uniform();
        std::vector<std::size_t> counts(classes, 60 / classes);
        const auto sample = binary_sampler(profiles, counts, 100 + run);
        EmConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(run);
        const auto model = fit_em_run(sample.features, 1 + rng.below(5), cfg, 0);
        bool ok = true;
        for (std::size_t k = 1; k < model.trace.size(); ++k) {
            const double delta = model.trace[k] - model.trace[k - 1];
            worst_drop = std::min(worst_drop, delta);
            if (delta < -1e-9) ok = false;
        }
        if (!ok) ++bad_runs;
    }

    double worst_marginal = 0.0;
    for (int run = 0; run < 10; ++run) {
        std::vector<double> profile(28);
        for (auto& v : profile) v = 0.1 + 0.8 * rng.uniform();
        const std::vector<std::size_t> counts{60};
        const auto sample = binary_sampler({profile}, counts, 500 + run);
        EmConfig cfg;
        cfg.restarts = 3;
        const auto model = fit_em(sample.features, 1, cfg);
        for (std::size_t j = 0; j < 28; ++j) {
            double ones = 0.0;
            for (std::size_t i = 0; i < sample.features.rows(); ++i) ones += sample.features.at(i, j);
            const double marginal =
                std::clamp(ones / static_cast<double>(sample.features.rows()), cfg.epsilon, 1.0 - cfg.epsilon);
            worst_marginal = std::max(worst_marginal, std::abs(model.q(0, j) - marginal));
        }
    }
    o.pass = bad_runs == 0 && worst_marginal <= 1e-10;
    o.detail = fmt::format("100 runs, {} with a drop below -1e-9 (smallest step {:.3g}); Y=1 marginal error {:.3g}",
                           bad_runs, worst_drop, worst_marginal);
    return o;
}

Outcome aic_selection() {
    Outcome o;
    std::vector<double> p1(28), p2(28), p3(28), flat(28);
    for (std::size_t j = 0; j < 28; ++j) {
        p1[j] = j % 3 == 0 ? 0.9 : 0.1;
        p2[j] = j % 3 == 1 ? 0.9 : 0.1;
        p3[j] = j % 3 == 2 ? 0.9 : 0.1;
        flat[j] = j < 14 ? 0.9 : 0.1;
    }
    int three = 0, one = 0;
    std::vector<std::size_t> picks3, picks1;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        EmConfig cfg;
        cfg.seed = seed;
        const std::vector<std::size_t> c3{20, 20, 20}, c1{60};
        const auto s3 = binary_sampler({p1, p2, p3}, c3, seed);
        const auto s1 = binary_sampler({flat}, c1, seed);
        const auto b3 = select_classes(s3.features, 1, 6, cfg).best_classes;
        const auto b1 = select_classes(s1.features, 1, 6, cfg).best_classes;
        picks3.push_back(b3);
        picks1.push_back(b1);
        three += b3 == 3;
        one += b1 == 1;
    }
    o.pass = three >= 8 && one >= 8;
    o.detail = fmt::format("3-class picks Y=3 on {}/10 {}, 1-class picks Y=1 on {}/10 {}", three,
                           fmt::join(picks3, ""), one, fmt::join(picks1, ""));
    return o;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome pipeline_recovery() {
    Outcome o;
    std::vector<double> counts, coverage, ari;
    int verdicts = 0;
    RunConfig config;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto pop = generate(three_school_spec(seed, 0.9));
        config.seed = seed;
        const auto a = cluster_dataset(pop.maps, config);
        const auto labels = a.robust.labels();
        std::vector<std::string> planted, found;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] >= 0) {
                planted.push_back(pop.labels[i]);
                found.push_back(std::to_string(labels[i]));
            }
        counts.push_back(static_cast<double>(a.robust.clusters.size()));
        coverage.push_back(static_cast<double>(planted.size()) / static_cast<double>(labels.size()));
        ari.push_back(planted.empty() ? 0.0 : adjusted_rand_index(planted, found));
        verdicts += a.verdict.stage == Stage::H1 && a.verdict.qualifier == kBetweenStages;
    }
    const double mc = median(counts), mcov = median(coverage), mari = median(ari);
    o.pass = mc >= 3 && mcov >= 0.5 && mari >= 0.8 && verdicts > 5;
    o.detail = fmt::format("median clusters {}, coverage {:.3f}, ARI {:.3f}; H1 between stages on {}/10 seeds", mc,
                           mcov, mari, verdicts);
    return o;
}

Outcome stage_table() {
    Outcome o;
    struct Row {
        std::vector<std::size_t> sizes;
        Stage stage;
        std::string_view qualifier;
    };
    const std::vector<Row> rows{{{11, 16, 12}, Stage::H1, kBetweenStages},
                                {{57}, Stage::H2, kNormalScience},
                                {{33}, Stage::H2, kTransitioning},
                                {{}, Stage::H0, ""}};
    int ok = 0;
    for (const auto& r : rows) {
        const auto v = classify_stage(r.sizes, 60);
        ok += v.stage == r.stage && v.qualifier == r.qualifier;
    }
    o.pass = ok == static_cast<int>(rows.size());
    o.detail = fmt::format("{}/{} table rows exact", ok, rows.size());
    return o;
}

Outcome influence_oracle() {
    Outcome o;
    Rng rng(7);
    oracle::RandomMapOptions opts;
    opts.max_constructs = 6;
    double worst = 0.0, worst_sum = 0.0;
    int maps = 0;
    while (maps < 200) {
        const auto m = oracle::random_map(rng, "m", opts);
        if (m.nodes.size() > 8) continue;
        ++maps;
        const auto iota = transitive_influence(m);
        for (const auto& [id, v] : oracle::path_influence(m)) worst = std::max(worst, std::abs(iota.at(id) - v));
        for (const auto& [target, row] : normalize_weights(m)) {
            double s = 0.0;
            for (const auto& [from, w] : row) s += w;
            worst_sum = std::max(worst_sum, std::abs(s - 1.0));
        }
    }
    o.pass = worst <= 1e-9 && worst_sum <= 1e-12;
    o.detail = fmt::format("200 maps of <= 8 nodes: max influence error {:.3g}, max share-sum error {:.3g}", worst,
                           worst_sum);
    return o;
}

Outcome consensus_identities() {
    Outcome o;
    Rng rng(8);
    const auto vocab = canonical_ids();
    double worst = 0.0;
    int nest_fail = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<CausalMap> data;
        const std::size_t n = 2 + rng.below(12);
        for (std::size_t i = 0; i < n; ++i) data.push_back(oracle::random_map(rng, "r" + std::to_string(i)));
        for (int k = 0; k < 25; ++k) {
            const PairKey p{vocab[rng.below(vocab.size())],
                            rng.bernoulli(0.5) ? std::string(kSesId) : vocab[rng.below(vocab.size())]};
            if (p.first == p.second) continue;
            worst = std::max(worst, std::abs(belief_score(data, p).score - oracle::grid_score(data, p)));
        }
        std::set<PairKey> prev;
        bool first = true;
        for (double pct : {97.0, 98.0, 99.0}) {
            std::set<PairKey> cur;
            for (const auto& e : build_consensus(data, pct).edges) cur.insert(e.pair);
            if (!first && !std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) ++nest_fail;
            prev = cur;
            first = false;
        }
    }

    int identical_fail = 0;
    for (const auto& proto : builtin_prototypes()) {
        std::vector<CausalMap> data(7, proto);
        for (std::size_t i = 0; i < data.size(); ++i) data[i].respondent_id = "r" + std::to_string(i);
        std::set<PairKey> expected, got;
        for (const auto& e : proto.edges)
            if (e.from.rfind("other:", 0) != 0) expected.insert({e.from, e.to});
        for (const auto& e : build_consensus(data, 97).edges) got.insert(e.pair);
        identical_fail += expected != got;
    }
    o.pass = worst <= 1e-3 && nest_fail == 0 && identical_fail == 0;
    o.detail = fmt::format("grid error {:.3g}; identical-map mismatches {}; nesting violations {}", worst,
                           identical_fail, nest_fail);
    return o;
}

std::map<std::string, std::string> read_csvs(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv")
            out[fs::relative(e.path(), dir).generic_string()] = read_text_file(e.path());
    return out;
}

Outcome determinism() {
    Outcome o;
    const auto pop = generate(three_school_spec(11));
    if (cli_path.empty()) {
        RunConfig c;
        const auto a = render_reports(pop.maps, analyze(pop.maps, c), c);
        const auto b = render_reports(pop.maps, analyze(pop.maps, c), c);
        std::size_t csvs = 0;
        for (const auto& [name, content] : a) csvs += name.ends_with(".csv");
        o.pass = a == b;
        o.detail = fmt::format("in-process: {} reports ({} CSV) {}", a.size(), csvs, o.pass ? "identical" : "differ");
        return o;
    }
    const fs::path root = fs::temp_directory_path() / fmt::format("cogmap_acceptance_{}", ::getpid());
    fs::remove_all(root);
    fs::create_directories(root / "data");
    for (const auto& m : pop.maps) write_map_file(root / "data" / (m.respondent_id + ".json"), m);
    for (const char* run : {"run1", "run2"}) {
        const std::string cmd = fmt::format("\"{}\" analyze \"{}\" -o \"{}\" --seed 5 > /dev/null", cli_path,
                                            (root / "data").string(), (root / run).string());
        if (std::system(cmd.c_str()) != 0) {
            o.pass = false;
            o.detail = "analyze command failed";
            fs::remove_all(root);
            return o;
        }
    }
    const auto a = read_csvs(root / "run1");
    const auto b = read_csvs(root / "run2");
    o.pass = !a.empty() && a == b;
    o.detail = fmt::format("two CLI analyze runs: {} CSV files {}", a.size(), o.pass ? "byte-identical" : "differ");
    fs::remove_all(root);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    struct Criterion {
        int number;
        std::string name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "LSW metric suite", 10.0, lsw_suite},
        {2, "maximum distance attainment", 0.0, max_distance},
        {3, "EM correctness", 0.0, em_correctness},
        {4, "AIC selection", 60.0, aic_selection},
        {5, "pipeline recovery", 120.0, pipeline_recovery},
        {6, "stage classifier table", 0.0, stage_table},
        {7, "influence oracle", 0.0, influence_oracle},
        {8, "consensus graph identities", 0.0, consensus_identities},
        {9, "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = seconds_since(t0);
        if (c.budget > 0 && secs >= c.budget) {
            o.pass = false;
            o.detail += fmt::format("; over the {:.0f} s budget", c.budget);
        }
        failures += !o.pass;
        std::cout << fmt::format("{} {}. {}: {} [{:.2f} s]\n", o.pass ? "PASS" : "FAIL", c.number, c.name, o.detail,
                                 secs);
    }
    return failures == 0 ? 0 : 1;
}
