#include "ftqlab/matching.hpp"

#include <limits>
#include <stdexcept>

namespace ftqlab {

std::vector<std::pair<int, int>> min_weight_matching(const std::vector<std::vector<int>>& w) {
    int m = int(w.size());
    if (m % 2) throw std::invalid_argument("min_weight_matching: odd node count");
    if (m == 0) return {};
    if (m > 20) throw std::runtime_error("min_weight_matching: too many defects for exact DP");
    for (auto& row : w)
        if (int(row.size()) != m) throw std::invalid_argument("min_weight_matching: ragged weight matrix");

    const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
    std::vector<int64_t> best(size_t(1) << m, inf);
    best[0] = 0;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        int i = __builtin_ctz(mask);
        uint32_t rest = mask & (mask - 1);
        int64_t b = inf;
        for (uint32_t sub = rest; sub; sub &= sub - 1) {
            int j = __builtin_ctz(sub);
            int64_t c = best[mask ^ (1u << i) ^ (1u << j)];
            if (c < inf) c += w[i][j];
            if (c < b) b = c;
        }
        best[mask] = b;
    }

    std::vector<std::pair<int, int>> pairs;
    uint32_t mask = (m == 32) ? ~0u : ((1u << m) - 1);
    while (mask) {
        int i = __builtin_ctz(mask);
        uint32_t rest = mask & (mask - 1);
        for (uint32_t sub = rest; sub; sub &= sub - 1) {
            int j = __builtin_ctz(sub);
            uint32_t next = mask ^ (1u << i) ^ (1u << j);
            if (best[next] < (inf / 2) && best[next] + w[i][j] == best[mask]) {
                pairs.emplace_back(i, j);
                mask = next;
                break;
            }
        }
    }
    return pairs;
}

} // namespace ftqlab
