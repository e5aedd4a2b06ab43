#include "cogmap/synthetic.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "cogmap/errors.hpp"
#include "cogmap/map_io.hpp"
#include "cogmap/random.hpp"
#include "cogmap/vocabulary.hpp"

namespace cogmap {

namespace {

constexpr int kMaxAttempts = 100;

void add_construct(CausalMap& m, const std::string& id) {
    m.nodes.push_back({id, NodeKind::construct, std::nullopt, std::nullopt});
}

void add_edge(CausalMap& m, const std::string& from, const std::string& to, int weight) {
    m.edges.push_back({from, to, weight < 0 ? -weight : weight, weight < 0 ? Sign::negative : Sign::positive});
}

void add_other(CausalMap& m, const std::string& target, int magnitude) {
    const std::string id = std::string(kOtherPrefix) + target;
    m.nodes.push_back({id, NodeKind::other, target, std::nullopt});
    m.edges.push_back({id, target, magnitude, Sign::unknown});
}

CausalMap new_map(std::string respondent) {
    CausalMap m;
    m.respondent_id = std::move(respondent);
    m.nodes.push_back({std::string(kSesId), NodeKind::ses, std::nullopt, std::nullopt});
    return m;
}

int random_weight(Rng& rng, double positive_share) {
    const int mag = rng.between(1, 3);
    return rng.bernoulli(positive_share) ? mag : -mag;
}

CausalMap sample_member(const Prototype& proto, const std::string& respondent, Rng& rng) {
    const CausalMap& t = proto.map;
    std::set<std::string> kept{std::string(kSesId)};
    std::size_t dropped = 0;
    for (const auto& n : t.nodes) {
        if (n.kind == NodeKind::ses || n.kind == NodeKind::other) continue;
        if (rng.bernoulli(proto.construct_inclusion))
            kept.insert(n.id);
        else
            ++dropped;
    }

    CausalMap m;
    m.respondent_id = respondent;
    for (const auto& n : t.nodes) {
        if (n.kind == NodeKind::other) continue;
        if (kept.count(n.id)) m.nodes.push_back(n);
    }
    for (const auto& e : t.edges) {
        const Node* from = t.find_node(e.from);
        if (from && from->kind == NodeKind::other) continue;
        if (!kept.count(e.from) || !kept.count(e.to)) continue;
        if (!rng.bernoulli(proto.edge_retention)) continue;
        Edge ne = e;
        if (proto.perturbation > 0) {
            const int delta = rng.between(-proto.perturbation, proto.perturbation);
            ne.magnitude = std::clamp(e.magnitude + delta, 1, 3);
        }
        m.edges.push_back(ne);
    }

    // Replace dropped constructs with ones from outside the template.
    std::vector<std::string> pool;
    for (const auto& c : canonical_constructs())
        if (!t.has_node(c.id)) pool.push_back(c.id);
    for (std::size_t k = 0; k < dropped && !pool.empty(); ++k) {
        const auto pick = rng.below(pool.size());
        const std::string id = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        std::vector<std::string> targets;
        for (const auto& n : m.nodes)
            if (n.kind != NodeKind::other) targets.push_back(n.id);
        const std::string target = targets[rng.below(targets.size())];
        add_construct(m, id);
        add_edge(m, id, target, random_weight(rng, 0.8));
    }

    for (const auto& n : t.nodes) {
        if (n.kind != NodeKind::other || !n.attached_to || !m.has_node(*n.attached_to)) continue;
        m.nodes.push_back(n);
        if (const Edge* e = t.find_edge(n.id, *n.attached_to)) m.edges.push_back(*e);
    }
    return m;
}

CausalMap sample_noise(std::size_t target_size, const std::string& respondent, Rng& rng) {
    CausalMap m = new_map(respondent);
    const auto vocab = canonical_ids();
    const int lo = std::max(1, static_cast<int>(target_size) - 2);
    const int hi = std::min(static_cast<int>(vocab.size()), static_cast<int>(target_size) + 2);
    const auto size = static_cast<std::size_t>(rng.between(lo, hi));

    std::vector<std::string> pool = vocab;
    std::vector<std::string> placed;
    for (std::size_t k = 0; k < size; ++k) {
        const auto pick = rng.below(pool.size());
        const std::string id = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        const std::string target =
            placed.empty() || rng.bernoulli(0.5) ? std::string(kSesId) : placed[rng.below(placed.size())];
        add_construct(m, id);
        add_edge(m, id, target, random_weight(rng, 0.8));
        placed.push_back(id);
    }
    std::set<std::string> with_incoming;
    for (const auto& e : m.edges) with_incoming.insert(e.to);
    for (const auto& id : with_incoming)
        if (rng.bernoulli(0.5)) add_other(m, id, rng.between(1, 3));
    return m;
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(fmt::format("{} {} outside [0,1]", what, p));
}

}  // namespace

Population generate(const PopulationSpec& spec) {
    std::size_t total = spec.noise_maps;
    for (const auto& s : spec.schools) {
        total += s.members;
        check_probability(s.prototype.construct_inclusion, "construct_inclusion");
        check_probability(s.prototype.edge_retention, "edge_retention");
        if (s.prototype.perturbation < 0) throw std::invalid_argument("perturbation must be non-negative");
        const auto report = validate(s.prototype.map);
        if (!report.ok())
            throw std::invalid_argument(
                fmt::format("prototype '{}' is invalid:\n{}", s.prototype.name, report.describe()));
    }
    if (total < 2) throw std::invalid_argument("a population needs at least two maps");

    struct Slot {
        int school;  // -1 for noise
    };
    std::vector<Slot> slots;
    for (std::size_t s = 0; s < spec.schools.size(); ++s)
        for (std::size_t k = 0; k < spec.schools[s].members; ++k) slots.push_back({static_cast<int>(s)});
    for (std::size_t k = 0; k < spec.noise_maps; ++k) slots.push_back({-1});
    if (spec.shuffle) {
        Rng rng(spec.seed);
        for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[rng.below(i)]);
    }

    const int width = std::max(3, static_cast<int>(std::to_string(total).size()));
    Population pop;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::string respondent = fmt::format("m{:0{}}", i + 1, width);
        const int school = slots[i].school;
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
            Rng rng = Rng::derive(spec.seed, (static_cast<std::uint64_t>(i) << 8) | static_cast<std::uint64_t>(attempt));
            CausalMap m = school < 0 ? sample_noise(spec.noise_constructs, respondent, rng)
                                     : sample_member(spec.schools[static_cast<std::size_t>(school)].prototype,
                                                     respondent, rng);
            if (validate(m).ok()) {
                pop.maps.push_back(std::move(m));
                ok = true;
            }
        }
        if (!ok)
            throw std::runtime_error(
                fmt::format("map {} stayed invalid after {} resampling attempts", respondent, kMaxAttempts));
        pop.labels.push_back(school < 0 ? std::string(kNoiseLabel)
                                        : spec.schools[static_cast<std::size_t>(school)].prototype.name);
    }
    return pop;
}

std::vector<CausalMap> builtin_prototypes() {
    std::vector<CausalMap> out;

    // Specification and measurement oriented.
    CausalMap a = new_map("prototype_A");
    for (const char* id : {"use_of_formal_methods", "quality_of_system_specifications",
                           "comprehension_of_software_specifications", "cost_effort_estimation_accuracy",
                           "measurability_of_software_system", "quality_assurance_effectiveness",
                           "quality_of_software_structure", "consistency_between_specifications",
                           "use_of_fault_tolerance_mechanisms", "quality_of_software_requirements_documentation"})
        add_construct(a, id);
    add_edge(a, "use_of_formal_methods", "quality_of_system_specifications", 2);
    add_edge(a, "quality_of_system_specifications", "comprehension_of_software_specifications", 2);
    add_edge(a, "comprehension_of_software_specifications", "ses", 2);
    add_edge(a, "measurability_of_software_system", "cost_effort_estimation_accuracy", 2);
    add_edge(a, "cost_effort_estimation_accuracy", "ses", 2);
    add_edge(a, "quality_assurance_effectiveness", "ses", 3);
    add_edge(a, "quality_of_software_structure", "ses", 2);
    add_edge(a, "consistency_between_specifications", "quality_of_system_specifications", 1);
    add_edge(a, "use_of_fault_tolerance_mechanisms", "quality_of_software_structure", 1);
    add_edge(a, "quality_of_software_requirements_documentation", "ses", 2);
    add_other(a, "ses", 2);
    add_other(a, "quality_of_system_specifications", 1);
    out.push_back(std::move(a));

    // Methodology and process oriented.
    CausalMap b = new_map("prototype_B");
    for (const char* id : {"appropriateness_of_methodology", "software_complexity", "developer_motivation",
                           "team_quality", "developer_skill_level", "management_effectiveness",
                           "degree_of_external_uncertainty_and_change", "degree_of_automation",
                           "appropriateness_of_programming_paradigm", "financial_risk"})
        add_construct(b, id);
    add_edge(b, "appropriateness_of_methodology", "ses", 2);
    add_edge(b, "software_complexity", "ses", -3);
    add_edge(b, "software_complexity", "developer_motivation", -1);
    add_edge(b, "developer_motivation", "team_quality", 2);
    add_edge(b, "team_quality", "ses", 3);
    add_edge(b, "developer_skill_level", "team_quality", 3);
    add_edge(b, "management_effectiveness", "appropriateness_of_methodology", 2);
    add_edge(b, "degree_of_external_uncertainty_and_change", "ses", -2);
    add_edge(b, "degree_of_automation", "ses", 1);
    add_edge(b, "appropriateness_of_programming_paradigm", "software_complexity", -2);
    add_edge(b, "financial_risk", "ses", -2);
    add_other(b, "ses", 2);
    add_other(b, "team_quality", 1);
    out.push_back(std::move(b));

    // People and communication oriented.
    CausalMap c = new_map("prototype_C");
    for (const char* id : {"developer_well_being", "quality_of_user_involvement",
                           "degree_of_continuous_improvement", "effectiveness_of_internal_communication",
                           "team_quality", "management_effectiveness", "degree_of_in_house_reuse",
                           "geographic_distribution_of_work", "use_of_open_source_software",
                           "developer_motivation"})
        add_construct(c, id);
    add_edge(c, "developer_well_being", "developer_motivation", 2);
    add_edge(c, "developer_motivation", "team_quality", 2);
    add_edge(c, "quality_of_user_involvement", "ses", 3);
    add_edge(c, "degree_of_continuous_improvement", "ses", 2);
    add_edge(c, "effectiveness_of_internal_communication", "team_quality", 2);
    add_edge(c, "team_quality", "ses", 3);
    add_edge(c, "management_effectiveness", "developer_well_being", 2);
    add_edge(c, "degree_of_in_house_reuse", "degree_of_continuous_improvement", 1);
    add_edge(c, "geographic_distribution_of_work", "effectiveness_of_internal_communication", -2);
    add_edge(c, "use_of_open_source_software", "degree_of_in_house_reuse", 1);
    add_other(c, "ses", 2);
    add_other(c, "team_quality", 1);
    out.push_back(std::move(c));

    return out;
}

PopulationSpec three_school_spec(std::uint64_t seed, double edge_retention) {
    PopulationSpec spec;
    spec.seed = seed;
    spec.noise_maps = 21;
    const std::size_t members[] = {11, 16, 12};
    const char* names[] = {"A", "B", "C"};
    auto protos = builtin_prototypes();
    for (std::size_t s = 0; s < protos.size(); ++s) {
        Prototype p;
        p.name = names[s];
        p.map = std::move(protos[s]);
        p.construct_inclusion = 0.9;
        p.edge_retention = edge_retention;
        p.perturbation = 1;
        spec.schools.push_back({std::move(p), members[s]});
    }
    return spec;
}

PopulationSpec parse_population_spec(std::string_view document, const std::string& base_dir) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("malformed population spec: {}", e.what()));
    }
    try {
        const auto seed = doc.value("seed", std::uint64_t{1});
        if (doc.value("preset", std::string()) == "three-schools") {
            auto spec = three_school_spec(seed, doc.value("edge_retention", 0.9));
            spec.shuffle = doc.value("shuffle", true);
            return spec;
        }
        PopulationSpec spec;
        spec.seed = seed;
        spec.noise_maps = doc.value("noise_maps", std::size_t{0});
        spec.noise_constructs = doc.value("noise_constructs", std::size_t{10});
        spec.shuffle = doc.value("shuffle", true);
        for (const auto& js : doc.at("schools")) {
            School s;
            s.members = js.at("members").get<std::size_t>();
            s.prototype.name = js.at("name").get<std::string>();
            s.prototype.construct_inclusion = js.value("construct_inclusion", 1.0);
            s.prototype.edge_retention = js.value("edge_retention", 1.0);
            s.prototype.perturbation = js.value("perturbation", 0);
            if (js.contains("prototype")) {
                s.prototype.map = read_map(js.at("prototype").dump());
            } else {
                std::filesystem::path p = js.at("prototype_file").get<std::string>();
                if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
                s.prototype.map = read_map(read_text_file(p));
            }
            spec.schools.push_back(std::move(s));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("invalid population spec: {}", e.what()));
    }
}

std::string labels_csv(const Population& pop) {
    std::string out = "respondent_id,label\n";
    for (std::size_t i = 0; i < pop.maps.size(); ++i)
        out += fmt::format("{},{}\n", pop.maps[i].respondent_id, pop.labels[i]);
    return out;
}

BinarySample binary_sampler(const std::vector<std::vector<double>>& profiles, std::span<const std::size_t> counts,
                            std::uint64_t seed) {
    if (profiles.size() != counts.size()) throw std::invalid_argument("one count per class profile required");
    BinarySample out;
    out.features.d = profiles.empty() ? 0 : profiles.front().size();
    for (const auto& p : profiles) {
        if (p.size() != out.features.d) throw std::invalid_argument("class profiles differ in length");
        for (double v : p) check_probability(v, "Bernoulli parameter");
    }
    std::size_t row = 0;
    for (std::size_t c = 0; c < profiles.size(); ++c) {
        for (std::size_t k = 0; k < counts[c]; ++k, ++row) {
            Rng rng = Rng::derive(seed, row);
            out.features.ids.push_back(fmt::format("b{:04}", row + 1));
            for (double p : profiles[c]) out.features.x.push_back(rng.bernoulli(p) ? 1 : 0);
            out.labels.push_back(c);
        }
    }
    return out;
}

}  // namespace cogmap
