#pragma once
#include <cstdint>
#include <utility>
#include <vector>

namespace ftqlab {

// Exact minimum-weight perfect matching on a complete graph with
// integer weights, by subset DP. Deterministic tie break: the returned
// pair list (i asc, each with its smallest feasible partner) is the
// lexicographically smallest optimal matching. Refuses m > 20 nodes
// (memo is 2^m); desk-scale defect counts stay far below that.
std::vector<std::pair<int, int>> min_weight_matching(const std::vector<std::vector<int>>& w);

} // namespace ftqlab
