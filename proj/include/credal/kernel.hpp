#pragma once

#include <span>
#include <vector>

#include "credal/types.hpp"

namespace credal {

enum class KernelFamily { Gaussian };

/// Characteristic kernel description. Only the Gaussian family
/// k(x, y) = exp(-||x - y||^2 / (2 sigma^2)) ships; the enum leaves room
/// for other families behind the same call sites.
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    double bandwidth = 1.0;

    static KernelSpec gaussian(double sigma) { return {KernelFamily::Gaussian, sigma}; }

    void validate() const {
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
            throw InvalidInputError("kernel bandwidth must be positive and finite");
    }
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// Entry (i, j) = k(A_i, B_j).
Matrix gram_matrix(const KernelSpec& spec, const Dataset& a, const Dataset& b);

/// Grand mean of the cross Gram matrix between two datasets (the inner
/// product of their empirical kernel mean embeddings).
double gram_mean(const KernelSpec& spec, const Dataset& a, const Dataset& b);

/// Median of all pairwise Euclidean distances over the pooled rows of the
/// given datasets. Even pair counts average the two middle distances.
/// Throws DegenerateDataError when the median distance is zero.
double median_heuristic_bandwidth(std::span<const Dataset* const> datasets);
double median_heuristic_bandwidth(const std::vector<Dataset>& datasets);

}  // namespace credal
