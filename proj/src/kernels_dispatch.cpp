#include "ftqlab/kernels.hpp"

namespace ftqlab {

#if defined(FTQLAB_HAVE_AVX2_LANE)
const KernelOps* avx2_kernels_impl();
#endif

const KernelOps* avx2_kernels() {
#if defined(FTQLAB_HAVE_AVX2_LANE) && defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return avx2_kernels_impl();
#endif
    return nullptr;
}

const KernelOps& kernels() {
    static const KernelOps& picked = []() -> const KernelOps& {
        if (const KernelOps* a = avx2_kernels()) return *a;
        return scalar_kernels();
    }();
    return picked;
}

} // namespace ftqlab
