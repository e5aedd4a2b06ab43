#pragma once
// Latent class analysis over binary construct-presence features.
//
// Model: p(y, x_1..x_d) = q(y) * prod_j q_j(x_j, y), with q_j(1, y) a
// Bernoulli parameter per attribute and class. Fitted by EM from random
// starting responsibilities; the number of classes is chosen by AIC.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cogmap/causal_map.hpp"

namespace cogmap {

struct FeatureMatrix {
    std::vector<std::string> ids;
    std::size_t d = 0;
    std::vector<std::uint8_t> x;        // row-major, ids.size() x d
    std::vector<std::string> warnings;  // e.g. rows with no canonical construct

    std::size_t rows() const { return ids.size(); }
    int at(std::size_t i, std::size_t j) const { return x[i * d + j]; }
};

// One column per canonical construct, in canonical order. ses, customs and
// other nodes are not features.
FeatureMatrix features(std::span<const CausalMap> dataset);

struct EmConfig {
    std::uint64_t seed = 1;
    int restarts = 20;
    int max_iter = 500;
    double tol = 1e-8;
    double epsilon = 1e-4;  // q_j clamped to [epsilon, 1 - epsilon]
};

struct LcaModel {
    std::size_t classes = 0;
    std::size_t d = 0;
    std::vector<double> prior;         // q(y)
    std::vector<double> conditionals;  // q_j(1, y), row-major classes x d
    double log_likelihood = 0.0;
    int iterations = 0;
    int restart = 0;                   // restart index that produced this model
    std::vector<double> trace;         // log-likelihood after each E-step

    double q(std::size_t y, std::size_t j) const { return conditionals[y * d + j]; }
    std::size_t n_params() const { return (classes - 1) + classes * d; }
    double aic() const { return 2.0 * static_cast<double>(n_params()) - 2.0 * log_likelihood; }
};

// Single EM run from the starting point of `restart` (derived from config.seed).
LcaModel fit_em_run(const FeatureMatrix& features, std::size_t classes, const EmConfig& config,
                    int restart);

// Best of config.restarts runs by log-likelihood; ties go to the lower restart.
// Throws std::invalid_argument if classes is 0 or exceeds the row count,
// NumericalError if the likelihood turns non-finite.
LcaModel fit_em(const FeatureMatrix& features, std::size_t classes, const EmConfig& config);

double log_likelihood(const LcaModel& model, const FeatureMatrix& features);

struct AicRow {
    std::size_t classes;
    std::size_t k;
    double log_likelihood;
    double aic;
};

struct ClassSelection {
    std::size_t best_classes = 0;
    std::vector<AicRow> table;
    LcaModel best;
};

// Fits every class count in [min_classes, max_classes]; lowest AIC wins,
// ties toward fewer classes.
ClassSelection select_classes(const FeatureMatrix& features, std::size_t min_classes,
                              std::size_t max_classes, const EmConfig& config);

struct Assignment {
    std::vector<std::string> ids;
    std::size_t classes = 0;
    std::vector<std::size_t> labels;
    std::vector<double> posteriors;  // row-major, rows x classes

    double posterior(std::size_t i, std::size_t y) const { return posteriors[i * classes + y]; }
};

// Posterior class membership and argmax label (ties to the lowest class).
Assignment assign(const LcaModel& model, const FeatureMatrix& features);

std::string aic_table_csv(const ClassSelection& sel);
std::string assignment_csv(const Assignment& a);

}  // namespace cogmap
