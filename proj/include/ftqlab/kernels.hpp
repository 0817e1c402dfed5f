#pragma once
#include <cstddef>
#include <cstdint>

namespace ftqlab {

// Word-level kernels behind the Pauli/GF(2) algebra. Scalar lane always
// exists; an AVX2 lane is compiled separately and picked at runtime.
struct KernelOps {
    void (*xor_into)(uint64_t* dst, const uint64_t* src, size_t n);
    void (*and_into)(uint64_t* dst, const uint64_t* src, size_t n);
    // parity of popcount(a & b)
    uint32_t (*and_parity)(const uint64_t* a, const uint64_t* b, size_t n);
    size_t (*popcount)(const uint64_t* a, size_t n);
    // popcount(a | b), i.e. support size of a Pauli stored as x/z planes
    size_t (*popcount_or)(const uint64_t* a, const uint64_t* b, size_t n);
    const char* name;
};

const KernelOps& kernels();            // dispatched (avx2 if available, else scalar)
const KernelOps& scalar_kernels();
const KernelOps* avx2_kernels();       // nullptr when lane absent or CPU lacks AVX2

} // namespace ftqlab
