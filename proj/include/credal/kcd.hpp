#pragma once

#include <utility>
#include <vector>

#include "credal/kernel.hpp"
#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace credal {

/// Gram matrices between empirical kernel mean embeddings of the extreme
/// points: mxx (l x l), mxy (l x r), myy (r x r). Every entry is a grand
/// mean over all sample pairs of the two datasets, including same-index
/// pairs, so the diagonals carry the usual O(1/n) embedding bias.
struct KcdGrams {
    Matrix mxx;
    Matrix mxy;
    Matrix myy;

    std::size_t x_count() const { return mxx.rows(); }
    std::size_t y_count() const { return myy.rows(); }

    /// Swaps the roles of the two credal samples.
    KcdGrams transposed() const { return {myy, mxy.transposed(), mxx}; }
};

KcdGrams kme_grams(const KernelSpec& spec, const CredalSample& sx, const CredalSample& sy);

/// Empirical kernel credal discrepancy
/// L(lambda, eta) = lambda' Mxx lambda - 2 lambda' Mxy eta + eta' Myy eta,
/// the squared MMD between the two weighted mixture embeddings.
double kcd_value(const KcdGrams& g, const Weights& lambda, const Weights& eta);

/// Analytic gradient (d/d lambda, d/d eta) of kcd_value.
std::pair<std::vector<double>, std::vector<double>> kcd_gradient(const KcdGrams& g,
                                                                 const Weights& lambda,
                                                                 const Weights& eta);

struct OptimizerConfig;

/// Diagnostic discrepancy estimates between two credal samples. These carry
/// no calibrated p-values; use the hypothesis tests for decisions.
struct CredalDiscrepancies {
    double inclusion_xy = 0.0;  // sup over X extremes of inf over eta
    double inclusion_yx = 0.0;
    double equality = 0.0;      // max of the two inclusions
    double intersection = 0.0;  // inf over both simplices
};

CredalDiscrepancies credal_discrepancies(const KernelSpec& spec, const CredalSample& sx,
                                         const CredalSample& sy, const OptimizerConfig& cfg,
                                         Rng& rng);

}  // namespace credal
