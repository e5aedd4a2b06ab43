#include "cogmap/lsw.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cogmap/errors.hpp"
#include "cogmap/vocabulary.hpp"

namespace cogmap {

namespace {

std::set<std::string> comparable_ids(const CausalMap& m) {
    std::set<std::string> ids;
    for (const auto& n : m.nodes)
        if (n.kind != NodeKind::other) ids.insert(n.id);
    return ids;
}

}  // namespace

ElementPartition partition_elements(const CausalMap& a, const CausalMap& b) {
    auto ia = comparable_ids(a);
    auto ib = comparable_ids(b);
    ia.insert(std::string(kSesId));
    ib.insert(std::string(kSesId));
    ElementPartition p;
    std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(p.common));
    std::set_difference(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(p.unique_a));
    std::set_difference(ib.begin(), ib.end(), ia.begin(), ia.end(), std::back_inserter(p.unique_b));
    return p;
}

long long lsw_denominator(std::size_t pc_, std::size_t pu1_, std::size_t pu2_) {
    const auto pc = static_cast<long long>(pc_);
    const auto pu1 = static_cast<long long>(pu1_);
    const auto pu2 = static_cast<long long>(pu2_);
    return 6 * pc * pc + 2 * pc * (pu1 + pu2) + pu1 * pu1 + pu2 * pu2 - (6 * pc + pu1 + pu2);
}

LswTerms lsw_terms(const CausalMap& a, const CausalMap& b) {
    const auto part = partition_elements(a, b);

    std::vector<std::string> order;
    order.reserve(part.total());
    order.insert(order.end(), part.common.begin(), part.common.end());
    order.insert(order.end(), part.unique_a.begin(), part.unique_a.end());
    order.insert(order.end(), part.unique_b.begin(), part.unique_b.end());

    const auto ma = adjacency(a, order, false);
    const auto mb = adjacency(b, order, false);

    LswTerms t;
    t.denominator = lsw_denominator(part.pc(), part.pu1(), part.pu2());
    if (t.denominator <= 0)
        throw NumericalError(fmt::format("LSW denominator {} for maps '{}' and '{}'", t.denominator,
                                         a.respondent_id, b.respondent_id));

    const std::size_t n = order.size();
    const std::size_t pc = part.pc();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool unique = i >= pc || j >= pc;
            t.numerator += std::abs(capped_entry(ma.at(i, j), unique) - capped_entry(mb.at(i, j), unique));
        }
    }
    return t;
}

double lsw(const CausalMap& a, const CausalMap& b) { return lsw_terms(a, b).ratio(); }

DistanceMatrix distance_matrix(std::span<const CausalMap> dataset) {
    if (dataset.size() < 2) throw std::invalid_argument("distance matrix needs at least two maps");
    DistanceMatrix d;
    const std::size_t n = dataset.size();
    for (const auto& m : dataset) d.ids.push_back(m.respondent_id);
    d.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v;
            try {
                v = lsw(dataset[i], dataset[j]);
            } catch (const NumericalError& e) {
                throw NumericalError(fmt::format("pair ({}, {}): {}", dataset[i].respondent_id,
                                                 dataset[j].respondent_id, e.what()));
            }
            d.at(i, j) = v;
            d.at(j, i) = v;
        }
    }
    return d;
}

void check_distance_matrix(const DistanceMatrix& dist) {
    const std::size_t n = dist.size();
    if (dist.values.size() != n * n) throw std::invalid_argument("distance matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist.at(i, i) != 0.0) throw std::invalid_argument("distance matrix has a nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = dist.at(i, j);
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument(fmt::format("distance ({}, {}) = {} outside [0,1]", i, j, v));
            if (v != dist.at(j, i)) throw std::invalid_argument("distance matrix is not symmetric");
        }
    }
}

std::string distance_matrix_csv(const DistanceMatrix& dist) {
    std::string out = fmt::format("{}\n", fmt::join(dist.ids, ","));
    for (std::size_t i = 0; i < dist.size(); ++i) {
        for (std::size_t j = 0; j < dist.size(); ++j) {
            if (j) out += ',';
            out += fmt::format("{:.15g}", dist.at(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace cogmap
