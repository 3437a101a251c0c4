#include "credal/kcd.hpp"

#include <algorithm>
#include <cmath>

#include "credal/simplex_opt.hpp"

namespace credal {

KcdGrams kme_grams(const KernelSpec& spec, const CredalSample& sx, const CredalSample& sy) {
    if (sx.dim() != sy.dim())
        throw InvalidInputError("kme_grams: credal samples must share one dimension");
    const std::size_t l = sx.count();
    const std::size_t r = sy.count();
    KcdGrams g{Matrix(l, l), Matrix(l, r), Matrix(r, r)};
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) {
            const double v = gram_mean(spec, sx.extreme(i), sx.extreme(j));
            g.mxx(i, j) = v;
            g.mxx(j, i) = v;
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            const double v = gram_mean(spec, sy.extreme(i), sy.extreme(j));
            g.myy(i, j) = v;
            g.myy(j, i) = v;
        }
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < r; ++j)
            g.mxy(i, j) = gram_mean(spec, sx.extreme(i), sy.extreme(j));
    return g;
}

namespace {

void check_weight_shapes(const KcdGrams& g, const Weights& lambda, const Weights& eta) {
    if (lambda.size() != g.x_count() || eta.size() != g.y_count())
        throw InvalidInputError("weight lengths must match the Gram dimensions");
}

double quad_form(const Matrix& m, std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.row(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            inner += row[j] * b[j];
        acc += a[i] * inner;
    }
    return acc;
}

}  // namespace

double kcd_value(const KcdGrams& g, const Weights& lambda, const Weights& eta) {
    check_weight_shapes(g, lambda, eta);
    const auto lam = lambda.values();
    const auto et = eta.values();
    return quad_form(g.mxx, lam, lam) - 2.0 * quad_form(g.mxy, lam, et) +
           quad_form(g.myy, et, et);
}

std::pair<std::vector<double>, std::vector<double>> kcd_gradient(const KcdGrams& g,
                                                                 const Weights& lambda,
                                                                 const Weights& eta) {
    check_weight_shapes(g, lambda, eta);
    const auto lam = lambda.values();
    const auto et = eta.values();
    const std::size_t l = g.x_count();
    const std::size_t r = g.y_count();
    std::vector<double> d_lambda(l, 0.0);
    std::vector<double> d_eta(r, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < l; ++j)
            acc += g.mxx(i, j) * lam[j];
        for (std::size_t j = 0; j < r; ++j)
            acc -= g.mxy(i, j) * et[j];
        d_lambda[i] = 2.0 * acc;
    }
    for (std::size_t i = 0; i < r; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < r; ++j)
            acc += g.myy(i, j) * et[j];
        for (std::size_t j = 0; j < l; ++j)
            acc -= g.mxy(j, i) * lam[j];
        d_eta[i] = 2.0 * acc;
    }
    return {std::move(d_lambda), std::move(d_eta)};
}

namespace {

double clamp_nonnegative(double v) {
    if (v < 0.0) {
        if (v < -1e-10)
            throw Error("discrepancy estimate unexpectedly negative");
        return 0.0;
    }
    return v;
}

}  // namespace

CredalDiscrepancies credal_discrepancies(const KernelSpec& spec, const CredalSample& sx,
                                         const CredalSample& sy, const OptimizerConfig& cfg,
                                         Rng& rng) {
    const KcdGrams g = kme_grams(spec, sx, sy);
    const KcdGrams gt = g.transposed();

    CredalDiscrepancies out;
    for (std::size_t i = 0; i < g.x_count(); ++i)
        out.inclusion_xy = std::max(out.inclusion_xy, minimize_eta(g, cfg, i).objective);
    for (std::size_t i = 0; i < g.y_count(); ++i)
        out.inclusion_yx = std::max(out.inclusion_yx, minimize_eta(gt, cfg, i).objective);
    out.inclusion_xy = clamp_nonnegative(out.inclusion_xy);
    out.inclusion_yx = clamp_nonnegative(out.inclusion_yx);
    out.equality = std::max(out.inclusion_xy, out.inclusion_yx);
    out.intersection = clamp_nonnegative(minimize_biconvex(g, cfg, rng).objective);
    return out;
}

}  // namespace credal
