#include "cogmap/lca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "cogmap/errors.hpp"
#include "cogmap/random.hpp"
#include "cogmap/vocabulary.hpp"

namespace cogmap {

FeatureMatrix features(std::span<const CausalMap> dataset) {
    FeatureMatrix f;
    f.d = kCanonicalCount;
    f.x.assign(dataset.size() * f.d, 0);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& m = dataset[i];
        f.ids.push_back(m.respondent_id);
        bool any = false;
        for (const auto& n : m.nodes) {
            if (n.kind != NodeKind::construct) continue;
            if (auto j = canonical_index(n.id)) {
                f.x[i * f.d + *j] = 1;
                any = true;
            }
        }
        if (!any)
            f.warnings.push_back(
                fmt::format("map '{}' has no canonical construct; its feature row is all zero", m.respondent_id));
    }
    return f;
}

namespace {

// Per-row log of q(y) * prod_j q_j(x_j, y) for every class, then normalised
// responsibilities. Returns the total log-likelihood.
double e_step(const LcaModel& m, const FeatureMatrix& f, std::vector<double>& resp) {
    const std::size_t n = f.rows();
    const std::size_t Y = m.classes;
    resp.assign(n * Y, 0.0);

    std::vector<double> log_q1(Y * f.d), log_q0(Y * f.d), log_prior(Y);
    for (std::size_t y = 0; y < Y; ++y) {
        log_prior[y] = std::log(m.prior[y]);
        for (std::size_t j = 0; j < f.d; ++j) {
            log_q1[y * f.d + j] = std::log(m.q(y, j));
            log_q0[y * f.d + j] = std::log1p(-m.q(y, j));
        }
    }

    double ll = 0.0;
    std::vector<double> lj(Y);
    for (std::size_t i = 0; i < n; ++i) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < Y; ++y) {
            double s = log_prior[y];
            for (std::size_t j = 0; j < f.d; ++j) s += f.at(i, j) ? log_q1[y * f.d + j] : log_q0[y * f.d + j];
            lj[y] = s;
            mx = std::max(mx, s);
        }
        double sum = 0.0;
        for (std::size_t y = 0; y < Y; ++y) {
            const double w = std::exp(lj[y] - mx);
            resp[i * Y + y] = w;
            sum += w;
        }
        for (std::size_t y = 0; y < Y; ++y) resp[i * Y + y] /= sum;
        ll += mx + std::log(sum);
    }
    return ll;
}

void m_step(LcaModel& m, const FeatureMatrix& f, const std::vector<double>& resp, double eps) {
    const std::size_t n = f.rows();
    const std::size_t Y = m.classes;
    m.prior.assign(Y, 0.0);
    m.conditionals.assign(Y * f.d, 0.0);
    for (std::size_t y = 0; y < Y; ++y) {
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = resp[i * Y + y];
            mass += r;
            for (std::size_t j = 0; j < f.d; ++j)
                if (f.at(i, j)) m.conditionals[y * f.d + j] += r;
        }
        m.prior[y] = mass / static_cast<double>(n);
        for (std::size_t j = 0; j < f.d; ++j) {
            const double p = mass > 0.0 ? m.conditionals[y * f.d + j] / mass : 0.5;
            // Clamping is the exact maximiser of the concave Bernoulli term on
            // [eps, 1-eps], so EM stays monotone.
            m.conditionals[y * f.d + j] = std::clamp(p, eps, 1.0 - eps);
        }
    }
}

void check_classes(const FeatureMatrix& f, std::size_t classes) {
    if (classes == 0) throw std::invalid_argument("class count must be at least 1");
    if (classes > f.rows())
        throw std::invalid_argument(
            fmt::format("class count {} exceeds the number of rows {}", classes, f.rows()));
}

}  // namespace

LcaModel fit_em_run(const FeatureMatrix& f, std::size_t classes, const EmConfig& config, int restart) {
    check_classes(f, classes);
    const std::size_t n = f.rows();

    // Dirichlet(1) starting responsibilities.
    Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(restart));
    std::vector<double> resp(n * classes);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t y = 0; y < classes; ++y) sum += resp[i * classes + y] = rng.exponential();
        for (std::size_t y = 0; y < classes; ++y) resp[i * classes + y] /= sum;
    }

    LcaModel m;
    m.classes = classes;
    m.d = f.d;
    m.restart = restart;
    m_step(m, f, resp, config.epsilon);

    double prev = -std::numeric_limits<double>::infinity();
    for (int iter = 1;; ++iter) {
        const double ll = e_step(m, f, resp);
        if (!std::isfinite(ll))
            throw NumericalError(fmt::format("non-finite log-likelihood with {} classes (restart {})",
                                             classes, restart));
        m.trace.push_back(ll);
        m.log_likelihood = ll;
        m.iterations = iter;
        if (ll - prev < config.tol || iter >= config.max_iter) break;
        prev = ll;
        m_step(m, f, resp, config.epsilon);
    }
    return m;
}

LcaModel fit_em(const FeatureMatrix& f, std::size_t classes, const EmConfig& config) {
    check_classes(f, classes);
    if (config.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    LcaModel best;
    for (int r = 0; r < config.restarts; ++r) {
        LcaModel m = fit_em_run(f, classes, config, r);
        if (r == 0 || m.log_likelihood > best.log_likelihood) best = std::move(m);
    }
    return best;
}

double log_likelihood(const LcaModel& model, const FeatureMatrix& f) {
    std::vector<double> resp;
    return e_step(model, f, resp);
}

ClassSelection select_classes(const FeatureMatrix& f, std::size_t min_classes, std::size_t max_classes,
                              const EmConfig& config) {
    if (min_classes < 1 || min_classes > max_classes)
        throw std::invalid_argument(fmt::format("invalid class range [{}, {}]", min_classes, max_classes));
    ClassSelection sel;
    for (std::size_t y = min_classes; y <= max_classes; ++y) {
        LcaModel m = fit_em(f, y, config);
        sel.table.push_back({y, m.n_params(), m.log_likelihood, m.aic()});
        if (sel.best_classes == 0 || m.aic() < sel.best.aic()) {
            sel.best_classes = y;
            sel.best = std::move(m);
        }
    }
    return sel;
}

Assignment assign(const LcaModel& model, const FeatureMatrix& f) {
    if (model.d != f.d)
        throw std::invalid_argument(fmt::format("model has {} attributes, features have {}", model.d, f.d));
    Assignment a;
    a.ids = f.ids;
    a.classes = model.classes;
    e_step(model, f, a.posteriors);
    a.labels.resize(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t y = 1; y < model.classes; ++y)
            if (a.posterior(i, y) > a.posterior(i, best)) best = y;
        a.labels[i] = best;
    }
    return a;
}

std::string aic_table_csv(const ClassSelection& sel) {
    std::string out = "classes,k,log_likelihood,aic\n";
    for (const auto& r : sel.table)
        out += fmt::format("{},{},{:.15g},{:.15g}\n", r.classes, r.k, r.log_likelihood, r.aic);
    return out;
}

std::string assignment_csv(const Assignment& a) {
    std::string out = "respondent_id,class";
    for (std::size_t y = 0; y < a.classes; ++y) out += fmt::format(",posterior_{}", y);
    out += '\n';
    for (std::size_t i = 0; i < a.ids.size(); ++i) {
        out += fmt::format("{},{}", a.ids[i], a.labels[i]);
        for (std::size_t y = 0; y < a.classes; ++y) out += fmt::format(",{:.15g}", a.posterior(i, y));
        out += '\n';
    }
    return out;
}

}  // namespace cogmap
