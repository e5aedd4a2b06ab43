#pragma once

#include <span>
#include <string>
#include <vector>

namespace cogmap {

// Adjusted Rand index between two labelings of the same items (Hubert and
// Arabie). Returns 1 when both labelings are a single identical partition
// with no pair structure to compare (n < 2 or both trivial).
double adjusted_rand_index(std::span<const std::string> a, std::span<const std::string> b);
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace cogmap
