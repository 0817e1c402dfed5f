#pragma once
#include <cstdint>

namespace ftqlab {

// Counter-based stream RNG: SplitMix64 finalizer over (key, counter).
// Streams derived from (master_seed, stream_index) are independent and
// reproducible regardless of draw order elsewhere; no libstdc++
// distribution objects so output is identical across toolchains.
struct RngStream {
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;
    uint64_t key = 0;
    uint64_t ctr = 0;

    uint64_t next_u64();
    double next_u01();                 // [0, 1), 53-bit
    bool bernoulli(double p);
    uint64_t below(uint64_t n);        // uniform in [0, n), debiased
};

uint64_t splitmix64(uint64_t x);
RngStream make_stream(uint64_t master_seed, uint64_t stream_index);

} // namespace ftqlab
