#pragma once

#include <cstddef>

namespace credal::simd {

/// Data-parallel inner-loop kernels. One scalar reference implementation,
/// plus ISA-specific variants selected once at startup. All variants must
/// agree with the scalar reference to floating-point reassociation error;
/// the equivalence suite enforces this.
struct Ops {
    /// out[j] = sum_c (x[c] - bt[c*stride + j])^2 for j in [0, n);
    /// bt is a coordinate-major view of the point set, one coordinate per
    /// stride-spaced block.
    void (*sqdist_row)(const double* x, const double* bt, std::size_t n, std::size_t d,
                       std::size_t stride, double* out);

    /// buf[i] = exp(-buf[i] * scale), scale >= 0.
    void (*exp_neg_scale)(double* buf, std::size_t n, double scale);

    double (*dot)(const double* a, const double* b, std::size_t n);

    double (*sum)(const double* a, std::size_t n);

    const char* name;
};

/// Active implementation. Picked from CPU features on first use; the
/// CREDAL_SIMD environment variable ("scalar", "avx2") forces a choice.
const Ops& active();

const Ops& scalar_ops();

/// nullptr when unsupported by the CPU or not compiled in.
const Ops* avx2_ops();

/// signs[i] in {-1, +1}; returns sum_{i,j} signs[i] signs[j] h[i*n+j]
/// using the active dot kernel.
double signed_quadform(const double* h, std::size_t n, const double* signs);

}  // namespace credal::simd
