#pragma once
// Synthetic respondent populations with planted schools of thought.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/causal_map.hpp"
#include "cogmap/lca.hpp"

namespace cogmap {

struct Prototype {
    std::string name;
    CausalMap map;                    // template, must validate
    double construct_inclusion = 1.0; // chance each template construct is kept
    double edge_retention = 1.0;      // chance each construct edge is kept
    int perturbation = 0;             // max weight change in steps, sign preserved
};

struct School {
    Prototype prototype;
    std::size_t members = 0;
};

struct PopulationSpec {
    std::vector<School> schools;
    std::size_t noise_maps = 0;
    std::size_t noise_constructs = 10;  // target size of a noise map, +-2
    std::uint64_t seed = 1;
    bool shuffle = true;                // interleave schools and noise in the output order
};

inline constexpr std::string_view kNoiseLabel = "-";

struct Population {
    std::vector<CausalMap> maps;
    std::vector<std::string> labels;  // school name per map, kNoiseLabel for noise
};

// Throws std::invalid_argument for an invalid spec (template fails
// validation, probabilities outside [0,1], fewer than two maps) and
// std::runtime_error when a member map stays invalid after 100 resamples.
Population generate(const PopulationSpec& spec);

// Three school templates (A, B, C) with partly overlapping constructs.
std::vector<CausalMap> builtin_prototypes();

// Schools of 11, 16 and 12 members plus 21 noise maps (60 in total).
PopulationSpec three_school_spec(std::uint64_t seed, double edge_retention = 0.9);

// JSON population spec; see README for the schema. Relative prototype_file
// entries resolve against base_dir.
PopulationSpec parse_population_spec(std::string_view document, const std::string& base_dir = ".");

std::string labels_csv(const Population& pop);

struct BinarySample {
    FeatureMatrix features;
    std::vector<std::size_t> labels;
};

// Independent Bernoulli draws per class profile; rows are emitted class by class.
BinarySample binary_sampler(const std::vector<std::vector<double>>& class_profiles,
                            std::span<const std::size_t> counts, std::uint64_t seed);

}  // namespace cogmap
