// AVX2 + FMA variants of the inner-loop kernels. This translation unit is
// compiled with -mavx2 -mfma and must only be reached through the dispatch
// table after a runtime CPU check.

#include "credal/simd.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace credal::simd {
namespace {

// exp(x) for four doubles: Cody-Waite reduction x = n*ln2 + r followed by a
// degree-13 Taylor polynomial in r and exact 2^n scaling through the
// exponent field. Inputs below -708 flush to zero, above 709 are clamped;
// observed error against libm is within ~2 ulp.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d lo_cut = _mm256_set1_pd(-708.0);
    const __m256d hi_cut = _mm256_set1_pd(709.0);

    const __m256d underflow = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
    x = _mm256_max_pd(x, lo_cut);
    x = _mm256_min_pd(x, hi_cut);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^n: n is integral in [-1022, 1023]; magic-add pulls it into the low
    // mantissa bits, then it moves into the exponent field.
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
    const __m256i ni = _mm256_castpd_si256(_mm256_add_pd(n, magic));
    const __m256i biased = _mm256_add_epi64(ni, _mm256_set1_epi64x(1023));
    const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));

    p = _mm256_mul_pd(p, scale);
    return _mm256_andnot_pd(underflow, p);
}

inline double hsum_pd(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void sqdist_row_avx2(const double* x, const double* bt, std::size_t n, std::size_t d,
                     std::size_t stride, double* out) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t c = 0; c < d; ++c) {
            const __m256d xc = _mm256_set1_pd(x[c]);
            const __m256d b = _mm256_loadu_pd(bt + c * stride + j);
            const __m256d diff = _mm256_sub_pd(xc, b);
            acc = _mm256_fmadd_pd(diff, diff, acc);
        }
        _mm256_storeu_pd(out + j, acc);
    }
    for (; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = x[c] - bt[c * stride + j];
            acc += diff * diff;
        }
        out[j] = acc;
    }
}

void exp_neg_scale_avx2(double* buf, std::size_t n, double scale) {
    const __m256d neg_scale = _mm256_set1_pd(-scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(buf + i), neg_scale);
        _mm256_storeu_pd(buf + i, exp_pd(v));
    }
    for (; i < n; ++i)
        buf[i] = std::exp(-buf[i] * scale);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum_pd(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i)
        acc += a[i];
    return acc;
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{sqdist_row_avx2, exp_neg_scale_avx2, dot_avx2, sum_avx2, "avx2"};
    return &ops;
}

}  // namespace credal::simd

#else

namespace credal::simd {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace credal::simd

#endif
