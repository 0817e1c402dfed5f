#include "ftqlab/rng.hpp"

namespace ftqlab {

uint64_t splitmix64(uint64_t x) {
    uint64_t z = x + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RngStream make_stream(uint64_t master_seed, uint64_t stream_index) {
    RngStream s;
    s.master_seed = master_seed;
    s.stream_index = stream_index;
    s.key = splitmix64(master_seed ^ splitmix64(stream_index + 0x5851F42D4C957F2Dull));
    s.ctr = 0;
    return s;
}

uint64_t RngStream::next_u64() {
    return splitmix64(key + (ctr++) * 0x9E3779B97F4A7C15ull);
}

double RngStream::next_u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
    if (p <= 0.0) { next_u64(); return false; }
    if (p >= 1.0) { next_u64(); return true; }
    return next_u01() < p;
}

uint64_t RngStream::below(uint64_t n) {
    // Lemire's multiply-shift with rejection of the biased slice.
    if (n == 0) return 0;
    uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
        uint64_t thresh = (0 - n) % n;
        while (lo < thresh) {
            x = next_u64();
            m = static_cast<unsigned __int128>(x) * n;
            lo = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

} // namespace ftqlab
