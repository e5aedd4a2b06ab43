#pragma once
// Langfield-Smith/Wirth distance ratio between causal maps.
//
//   DR = sum_{i != j} |a*_ij - b*_ij| / D
//   D  = 6 pc^2 + 2 pc (pu1 + pu2) + pu1^2 + pu2^2 - (6 pc + pu1 + pu2)
//
// where a*, b* are the adjacency entries capped to +-1 whenever the row or
// column element is not common to both maps. `other` nodes never take part.

#include <span>
#include <string>
#include <vector>

#include "cogmap/causal_map.hpp"

namespace cogmap {

struct ElementPartition {
    std::vector<std::string> common;    // sorted, always holds ses
    std::vector<std::string> unique_a;  // sorted
    std::vector<std::string> unique_b;  // sorted

    std::size_t pc() const { return common.size(); }
    std::size_t pu1() const { return unique_a.size(); }
    std::size_t pu2() const { return unique_b.size(); }
    std::size_t total() const { return pc() + pu1() + pu2(); }
};

ElementPartition partition_elements(const CausalMap& a, const CausalMap& b);

// Caps a nonzero entry to its sign when either endpoint is unique to one map.
constexpr int capped_entry(int value, bool involves_unique) {
    if (!involves_unique) return value;
    if (value > 0) return 1;
    if (value < 0) return -1;
    return 0;
}

// The normalising denominator; equals the largest achievable numerator.
long long lsw_denominator(std::size_t pc, std::size_t pu1, std::size_t pu2);

struct LswTerms {
    long long numerator = 0;
    long long denominator = 0;
    double ratio() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// Throws NumericalError if the denominator is not positive (both maps hold
// nothing but ses).
LswTerms lsw_terms(const CausalMap& a, const CausalMap& b);

double lsw(const CausalMap& a, const CausalMap& b);

struct DistanceMatrix {
    std::vector<std::string> ids;
    std::vector<double> values;  // row-major, symmetric, zero diagonal

    std::size_t size() const { return ids.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * ids.size() + j]; }
};

DistanceMatrix distance_matrix(std::span<const CausalMap> dataset);

// Throws std::invalid_argument unless square, symmetric, zero-diagonal and within [0,1].
void check_distance_matrix(const DistanceMatrix& dist);

// Header of respondent ids, then one row of values per respondent.
std::string distance_matrix_csv(const DistanceMatrix& dist);

}  // namespace cogmap
