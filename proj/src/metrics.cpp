#include "cogmap/metrics.hpp"

#include <map>
#include <stdexcept>

namespace cogmap {

namespace {

double choose2(double x) { return x * (x - 1.0) / 2.0; }

template <class T>
double ari(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
    std::map<std::pair<T, T>, double> table;
    std::map<T, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0, sa = 0.0, sb = 0.0;
    for (const auto& [k, v] : table) index += choose2(v);
    for (const auto& [k, v] : rows) sa += choose2(v);
    for (const auto& [k, v] : cols) sb += choose2(v);
    const double total = choose2(static_cast<double>(a.size()));
    if (total == 0.0) return 1.0;
    const double expected = sa * sb / total;
    const double max_index = 0.5 * (sa + sb);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace

double adjusted_rand_index(std::span<const std::string> a, std::span<const std::string> b) { return ari(a, b); }

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) { return ari(a, b); }

}  // namespace cogmap
