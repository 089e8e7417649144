#include "hywig/simd/kernels.hpp"

namespace hywig::simd {

#if HYWIG_HAVE_AVX2_TU
bool avx2_supported() {
    static const bool ok =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
}
#endif

const backend& active_backend() {
#if HYWIG_HAVE_AVX2_TU
    static const backend& b = avx2_supported() ? avx2_backend() : scalar_backend();
    return b;
#else
    return scalar_backend();
#endif
}

} // namespace hywig::simd
