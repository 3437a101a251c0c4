#include <cmath>
#include <cstddef>

#include "credal/simd.hpp"

namespace credal::simd {
namespace {

void sqdist_row_scalar(const double* x, const double* bt, std::size_t n, std::size_t d,
                       std::size_t stride, double* out) {
    for (std::size_t j = 0; j < n; ++j)
        out[j] = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        const double xc = x[c];
        const double* col = bt + c * stride;
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = xc - col[j];
            out[j] += diff * diff;
        }
    }
}

void exp_neg_scale_scalar(double* buf, std::size_t n, double scale) {
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = std::exp(-buf[i] * scale);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i];
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{sqdist_row_scalar, exp_neg_scale_scalar, dot_scalar, sum_scalar,
                         "scalar"};
    return ops;
}

}  // namespace credal::simd
