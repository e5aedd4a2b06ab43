#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "builders.hpp"
#include "cogmap/lca.hpp"
#include "cogmap/synthetic.hpp"

using namespace cogmap;
using testing_support::make_map;

namespace {

FeatureMatrix small_matrix(std::size_t d, const std::vector<std::vector<int>>& rows) {
    FeatureMatrix f;
    f.d = d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        f.ids.push_back("r" + std::to_string(i));
        for (int v : rows[i]) f.x.push_back(static_cast<std::uint8_t>(v));
    }
    return f;
}

// Direct evaluation of log p(x_i) and p(y | x_i) without log-sum-exp tricks.
double direct_row_likelihood(const LcaModel& m, const FeatureMatrix& f, std::size_t i, std::vector<double>& joint) {
    joint.assign(m.classes, 0.0);
    double total = 0.0;
    for (std::size_t y = 0; y < m.classes; ++y) {
        double p = m.prior[y];
        for (std::size_t j = 0; j < f.d; ++j) p *= f.at(i, j) ? m.q(y, j) : 1.0 - m.q(y, j);
        joint[y] = p;
        total += p;
    }
    return total;
}

}  // namespace

TEST_CASE("feature matrix uses canonical columns only") {
    const auto a = make_map("a", {"team_quality", "custom:time_to_market"},
                            {{"team_quality", "ses", 2}, {"custom:time_to_market", "ses", 1}}, {{"ses", 1}});
    const auto b = make_map("b", {"custom:only"}, {{"custom:only", "ses", 1}});
    std::vector<CausalMap> data{a, b};
    const auto f = features(data);
    CHECK(f.d == 28);
    CHECK(f.rows() == 2);
    const auto col = *canonical_index("team_quality");
    for (std::size_t j = 0; j < f.d; ++j) {
        CHECK(f.at(0, j) == (j == col ? 1 : 0));
        CHECK(f.at(1, j) == 0);
    }
    REQUIRE(f.warnings.size() == 1);
    CHECK(f.warnings[0].find("'b'") != std::string::npos);
}

TEST_CASE("one class reproduces the empirical marginals") {
    const auto f = small_matrix(3, {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 0}});
    EmConfig cfg;
    cfg.restarts = 3;
    const auto m = fit_em(f, 1, cfg);
    CHECK(m.prior[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(m.q(0, 0) - 0.75) < 1e-12);
    CHECK(std::abs(m.q(0, 1) - 0.5) < 1e-12);
    CHECK(std::abs(m.q(0, 2) - 0.5) < 1e-12);
    const double expected = 4 * (0.75 * std::log(0.75) + 0.25 * std::log(0.25)) + 8 * std::log(0.5);
    CHECK(m.log_likelihood == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log-likelihood agrees with direct evaluation and never decreases") {
    const auto sample = binary_sampler({{0.9, 0.9, 0.1, 0.1, 0.5}, {0.1, 0.2, 0.9, 0.8, 0.5}},
                                       std::vector<std::size_t>{15, 15}, 3);
    EmConfig cfg;
    cfg.seed = 9;
    for (std::size_t Y = 1; Y <= 3; ++Y) {
        for (int r = 0; r < 5; ++r) {
            const auto m = fit_em_run(sample.features, Y, cfg, r);
            for (std::size_t k = 1; k < m.trace.size(); ++k) CHECK(m.trace[k] - m.trace[k - 1] >= -1e-9);
            double direct = 0.0;
            std::vector<double> joint;
            for (std::size_t i = 0; i < sample.features.rows(); ++i)
                direct += std::log(direct_row_likelihood(m, sample.features, i, joint));
            CHECK(m.log_likelihood == doctest::Approx(direct).epsilon(1e-10));
            CHECK(log_likelihood(m, sample.features) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("posteriors match Bayes rule evaluated directly") {
    const auto sample = binary_sampler({{0.8, 0.8, 0.2, 0.2}, {0.2, 0.3, 0.8, 0.9}},
                                       std::vector<std::size_t>{10, 10}, 17);
    EmConfig cfg;
    cfg.restarts = 4;
    const auto m = fit_em(sample.features, 2, cfg);
    const auto a = assign(m, sample.features);
    std::vector<double> joint;
    for (std::size_t i = 0; i < sample.features.rows(); ++i) {
        const double total = direct_row_likelihood(m, sample.features, i, joint);
        double sum = 0.0;
        std::size_t argmax = 0;
        for (std::size_t y = 0; y < 2; ++y) {
            CHECK(a.posterior(i, y) == doctest::Approx(joint[y] / total).epsilon(1e-10));
            sum += a.posterior(i, y);
            if (joint[y] > joint[argmax]) argmax = y;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a.labels[i] == argmax);
    }
}

TEST_CASE("conditionals stay inside the clamp") {
    const auto f = small_matrix(2, {{1, 0}, {1, 0}, {1, 0}});
    EmConfig cfg;
    const auto m = fit_em(f, 1, cfg);
    CHECK(m.q(0, 0) == 1.0 - cfg.epsilon);
    CHECK(m.q(0, 1) == cfg.epsilon);
}

TEST_CASE("parameter count and AIC") {
    const auto f = small_matrix(28, {std::vector<int>(28, 1), std::vector<int>(28, 0)});
    EmConfig cfg;
    cfg.restarts = 2;
    const auto m = fit_em(f, 2, cfg);
    CHECK(m.n_params() == 1 + 2 * 28);
    CHECK(m.aic() == doctest::Approx(2.0 * 57 - 2.0 * m.log_likelihood));
}

TEST_CASE("runs are reproducible for a seed") {
    const auto sample = binary_sampler({{0.7, 0.2, 0.6}, {0.1, 0.9, 0.4}}, std::vector<std::size_t>{12, 12}, 1);
    EmConfig cfg;
    cfg.seed = 77;
    const auto a = fit_em(sample.features, 2, cfg);
    const auto b = fit_em(sample.features, 2, cfg);
    CHECK(a.conditionals == b.conditionals);
    CHECK(a.prior == b.prior);
    CHECK(a.restart == b.restart);
}

TEST_CASE("AIC prefers the planted class count") {
    std::vector<double> p1(28), p2(28), p3(28);
    for (std::size_t j = 0; j < 28; ++j) {
        p1[j] = j % 3 == 0 ? 0.9 : 0.1;
        p2[j] = j % 3 == 1 ? 0.9 : 0.1;
        p3[j] = j % 3 == 2 ? 0.9 : 0.1;
    }
    const auto sample = binary_sampler({p1, p2, p3}, std::vector<std::size_t>{20, 20, 20}, 4);
    EmConfig cfg;
    cfg.seed = 4;
    const auto sel = select_classes(sample.features, 1, 5, cfg);
    CHECK(sel.best_classes == 3);
    REQUIRE(sel.table.size() == 5);
    for (const auto& row : sel.table) CHECK(row.k == (row.classes - 1) + row.classes * 28);
    CHECK(aic_table_csv(sel).rfind("classes,k,log_likelihood,aic\n1,28,", 0) == 0);
}

TEST_CASE("argument checks") {
    const auto f = small_matrix(2, {{1, 0}, {0, 1}});
    EmConfig cfg;
    CHECK_THROWS_AS(fit_em(f, 0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(fit_em(f, 3, cfg), std::invalid_argument);
    CHECK_THROWS_AS(select_classes(f, 2, 1, cfg), std::invalid_argument);
}

TEST_CASE("assignment csv") {
    const auto f = small_matrix(2, {{1, 0}, {0, 1}});
    EmConfig cfg;
    cfg.restarts = 1;
    const auto a = assign(fit_em(f, 1, cfg), f);
    CHECK(assignment_csv(a) == "respondent_id,class,posterior_0\nr0,0,1\nr1,0,1\n");
}
