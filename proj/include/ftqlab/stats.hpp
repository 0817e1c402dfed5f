#pragma once
#include <cstddef>

namespace ftqlab {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double point = 0.0;
};

// Wilson score interval for a binomial proportion. z defaults to the
// two-sided 95% normal quantile.
Interval wilson_interval(size_t successes, size_t trials, double z = 1.959963984540054);

} // namespace ftqlab
