#include "ftqlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ftqlab {

Interval wilson_interval(size_t successes, size_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    Interval iv;
    iv.point = p;
    iv.lo = std::max(0.0, center - half);
    iv.hi = std::min(1.0, center + half);
    return iv;
}

} // namespace ftqlab
