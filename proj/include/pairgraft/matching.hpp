#pragma once

#include <cstdint>
#include <vector>

namespace pairgraft {

// Exact minimum-weight perfect matching on a dense graph with non-negative
// integer weights (primal-dual blossom algorithm, O(n^3)). Vertex count must
// be even and every perfect matching must exist (complete graphs here).
// Returns the mate of each vertex.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& w);

// Brute-force reference for tests; n <= 12.
std::vector<int> brute_force_perfect_matching(const std::vector<std::vector<int64_t>>& w);

}  // namespace pairgraft
