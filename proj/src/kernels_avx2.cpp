// AVX2 lane. This TU is the only one compiled with -mavx2; runtime dispatch
// keeps it off the path on older CPUs.
#include "ftqlab/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#include <bit>

namespace ftqlab {
namespace {

void a_xor_into(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256((const __m256i*)(dst + i));
        __m256i s = _mm256_loadu_si256((const __m256i*)(src + i));
        _mm256_storeu_si256((__m256i*)(dst + i), _mm256_xor_si256(d, s));
    }
    for (; i < n; i++) dst[i] ^= src[i];
}

void a_and_into(uint64_t* dst, const uint64_t* src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256((const __m256i*)(dst + i));
        __m256i s = _mm256_loadu_si256((const __m256i*)(src + i));
        _mm256_storeu_si256((__m256i*)(dst + i), _mm256_and_si256(d, s));
    }
    for (; i < n; i++) dst[i] &= src[i];
}

uint32_t a_and_parity(const uint64_t* a, const uint64_t* b, size_t n) {
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i x = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i y = _mm256_loadu_si256((const __m256i*)(b + i));
        acc = _mm256_xor_si256(acc, _mm256_and_si256(x, y));
    }
    uint64_t lanes[4];
    _mm256_storeu_si256((__m256i*)lanes, acc);
    uint64_t tail = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
    for (; i < n; i++) tail ^= a[i] & b[i];
    return (uint32_t)(std::popcount(tail) & 1);
}

// popcount via per-word POPCNT; AVX2 has no vector popcount and the buffers
// here are short, so this is mostly about keeping one code path per lane.
size_t a_popcount(const uint64_t* a, size_t n) {
    size_t c = 0;
    for (size_t i = 0; i < n; i++) c += (size_t)std::popcount(a[i]);
    return c;
}

size_t a_popcount_or(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t c = 0;
    for (size_t i = 0; i < n; i++) c += (size_t)std::popcount(a[i] | b[i]);
    return c;
}

} // namespace

const KernelOps* avx2_kernels_impl() {
    static const KernelOps ops = {a_xor_into, a_and_into, a_and_parity,
                                  a_popcount, a_popcount_or, "avx2"};
    return &ops;
}

} // namespace ftqlab

#else
namespace ftqlab {
const KernelOps* avx2_kernels_impl() { return nullptr; }
} // namespace ftqlab
#endif
