#pragma once

// Brute-force reference computations for the test suite. Everything here is
// written directly from the defining formulas, independent of the library's
// evaluation paths, and stays deliberately naive.

#include <cmath>
#include <span>
#include <vector>

#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace oracle {

inline double kernel(std::span<const double> x, std::span<const double> y, double sigma) {
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c)
        sq += (x[c] - y[c]) * (x[c] - y[c]);
    return std::exp(-sq / (2.0 * sigma * sigma));
}

inline double mmd2_unbiased(const credal::Dataset& x, const credal::Dataset& y, double sigma) {
    const std::size_t n = x.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            acc += kernel(x.row(i), x.row(j), sigma) + kernel(y.row(i), y.row(j), sigma) -
                   kernel(x.row(i), y.row(j), sigma) - kernel(x.row(j), y.row(i), sigma);
        }
    return acc / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline double kme_inner(const credal::Dataset& a, const credal::Dataset& b, double sigma) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc += kernel(a.row(i), b.row(j), sigma);
    return acc / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

/// || sum_i lambda_i mu_hat(X_i) - sum_j eta_j mu_hat(Y_j) ||^2 expanded into
/// weighted double sums over every pair of observations.
inline double kcd_value(const credal::CredalSample& sx, const credal::CredalSample& sy,
                        std::span<const double> lambda, std::span<const double> eta,
                        double sigma) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sx.count(); ++i)
        for (std::size_t j = 0; j < sx.count(); ++j)
            acc += lambda[i] * lambda[j] * kme_inner(sx.extreme(i), sx.extreme(j), sigma);
    for (std::size_t i = 0; i < sy.count(); ++i)
        for (std::size_t j = 0; j < sy.count(); ++j)
            acc += eta[i] * eta[j] * kme_inner(sy.extreme(i), sy.extreme(j), sigma);
    for (std::size_t i = 0; i < sx.count(); ++i)
        for (std::size_t j = 0; j < sy.count(); ++j)
            acc -= 2.0 * lambda[i] * eta[j] * kme_inner(sx.extreme(i), sy.extreme(j), sigma);
    return acc;
}

inline credal::Dataset random_dataset(credal::Rng& rng, std::size_t n, std::size_t d,
                                      double spread = 2.0) {
    credal::Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c)
            m(i, c) = spread * rng.normal();
    return credal::Dataset(std::move(m));
}

inline credal::CredalSample random_credal(credal::Rng& rng, std::size_t count, std::size_t n,
                                          std::size_t d) {
    std::vector<credal::Dataset> parts;
    for (std::size_t i = 0; i < count; ++i)
        parts.push_back(random_dataset(rng, n, d));
    return credal::CredalSample(std::move(parts));
}

}  // namespace oracle
