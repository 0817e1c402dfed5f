#include "ftqlab/kernels.hpp"
#include <bit>

namespace ftqlab {
namespace {

void s_xor_into(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; i++) dst[i] ^= src[i];
}

void s_and_into(uint64_t* dst, const uint64_t* src, size_t n) {
    for (size_t i = 0; i < n; i++) dst[i] &= src[i];
}

uint32_t s_and_parity(const uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t acc = 0;
    for (size_t i = 0; i < n; i++) acc ^= a[i] & b[i];
    return (uint32_t)(std::popcount(acc) & 1);
}

size_t s_popcount(const uint64_t* a, size_t n) {
    size_t c = 0;
    for (size_t i = 0; i < n; i++) c += (size_t)std::popcount(a[i]);
    return c;
}

size_t s_popcount_or(const uint64_t* a, const uint64_t* b, size_t n) {
    size_t c = 0;
    for (size_t i = 0; i < n; i++) c += (size_t)std::popcount(a[i] | b[i]);
    return c;
}

} // namespace

const KernelOps& scalar_kernels() {
    static const KernelOps ops = {s_xor_into, s_and_into, s_and_parity,
                                  s_popcount, s_popcount_or, "scalar"};
    return ops;
}

} // namespace ftqlab
