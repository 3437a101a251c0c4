#include <cstdlib>
#include <string_view>

#include "credal/simd.hpp"

namespace credal::simd {

#if defined(CREDAL_ENABLE_AVX2)
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#if defined(CREDAL_ENABLE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_ops_impl();
#endif
    return nullptr;
}

namespace {

const Ops& select() {
    if (const char* env = std::getenv("CREDAL_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar")
            return scalar_ops();
        if (want == "avx2" && avx2_ops())
            return *avx2_ops();
        // Unknown or unavailable request falls through to auto-detection.
    }
    if (const Ops* ops = avx2_ops())
        return *ops;
    return scalar_ops();
}

}  // namespace

const Ops& active() {
    static const Ops& ops = select();
    return ops;
}

double signed_quadform(const double* h, std::size_t n, const double* signs) {
    const Ops& ops = active();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += signs[i] * ops.dot(h + i * n, signs, n);
    return acc;
}

}  // namespace credal::simd
