#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "cogmap/errors.hpp"
#include "cogmap/synthetic.hpp"

using namespace cogmap;

TEST_CASE("built-in prototypes are valid") {
    const auto protos = builtin_prototypes();
    CHECK(protos.size() == 3);
    for (const auto& p : protos) CHECK(validate(p).ok());
}

TEST_CASE("three-school population") {
    const auto pop = generate(three_school_spec(5));
    REQUIRE(pop.maps.size() == 60);
    REQUIRE(pop.labels.size() == 60);
    std::map<std::string, int> counts;
    for (const auto& l : pop.labels) ++counts[l];
    CHECK(counts["A"] == 11);
    CHECK(counts["B"] == 16);
    CHECK(counts["C"] == 12);
    CHECK(counts[std::string(kNoiseLabel)] == 21);
    std::set<std::string> ids;
    for (const auto& m : pop.maps) {
        CHECK(validate(m).ok());
        CHECK(ids.insert(m.respondent_id).second);
    }
    CHECK(pop.maps[0].respondent_id == "m001");
    CHECK(labels_csv(pop).rfind("respondent_id,label\nm001,", 0) == 0);
}

TEST_CASE("generation is deterministic per seed") {
    const auto a = generate(three_school_spec(9));
    const auto b = generate(three_school_spec(9));
    const auto c = generate(three_school_spec(10));
    CHECK(a.maps == b.maps);
    CHECK(a.labels == b.labels);
    CHECK(a.maps != c.maps);
}

TEST_CASE("full retention reproduces the template") {
    PopulationSpec spec;
    spec.seed = 3;
    Prototype p{"A", builtin_prototypes()[0], 1.0, 1.0, 0};
    spec.schools.push_back({p, 4});
    const auto pop = generate(spec);
    for (const auto& m : pop.maps) {
        auto copy = m;
        copy.respondent_id = p.map.respondent_id;
        CHECK(copy == p.map);
    }
}

TEST_CASE("bad specs are rejected") {
    PopulationSpec spec;
    spec.schools.push_back({Prototype{"A", builtin_prototypes()[0], 1.5, 1.0, 0}, 4});
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    PopulationSpec tiny;
    tiny.noise_maps = 1;
    CHECK_THROWS_AS(generate(tiny), std::invalid_argument);
}

TEST_CASE("population spec parsing") {
    const auto preset = parse_population_spec(R"({"preset": "three-schools", "seed": 4})");
    CHECK(preset.seed == 4);
    CHECK(preset.schools.size() == 3);
    CHECK(preset.noise_maps == 21);

    const auto custom = parse_population_spec(R"({
        "seed": 2, "noise_maps": 3,
        "schools": [{"name": "X", "members": 5, "prototype": {
            "format_version": "1.0", "respondent_id": "x",
            "nodes": [{"id": "ses", "kind": "ses"}, {"id": "team_quality", "kind": "construct"}],
            "edges": [{"from": "team_quality", "to": "ses", "sign": 1, "magnitude": 2}]}}]})");
    CHECK(custom.seed == 2);
    REQUIRE(custom.schools.size() == 1);
    CHECK(custom.schools[0].members == 5);
    CHECK(custom.schools[0].prototype.name == "X");
    CHECK(generate(custom).maps.size() == 8);

    CHECK_THROWS_AS(parse_population_spec("{"), ParseError);
    CHECK_THROWS_AS(parse_population_spec(R"({"schools": [{"name": "X"}]})"), ParseError);
}

TEST_CASE("binary sampler") {
    const std::vector<std::vector<double>> profiles{{1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
    const std::vector<std::size_t> counts{2, 3};
    const auto s = binary_sampler(profiles, counts, 1);
    CHECK(s.features.rows() == 5);
    CHECK(s.labels == std::vector<std::size_t>{0, 0, 1, 1, 1});
    CHECK(s.features.at(0, 0) == 1);
    CHECK(s.features.at(0, 1) == 0);
    CHECK(s.features.at(4, 1) == 1);
    CHECK(s.features.ids[0] == "b0001");
}
