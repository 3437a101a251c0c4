#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace credal {

enum class SplitMode { Split, DoubleDip };

const char* to_string(SplitMode m);

struct SplitConfig {
    double beta = 0.25;
    SplitMode mode = SplitMode::Split;

    void validate() const {
        if (!(beta >= 0.0 && beta < 1.0))
            throw InvalidInputError("split exponent beta must lie in [0, 1)");
    }
};

/// Solves n_e + n_e^(1-beta) = n by Newton iteration from n/2 and returns
/// rho = n_e / n, so that n_t / n_e = n_e^(-beta): the testing share shrinks
/// relative to the estimation share as n grows.
double adaptive_split_ratio(std::size_t n, double beta, double tol = 1e-8, int max_iter = 100);

/// Integer split sizes implied by the adaptive ratio: n_e rounded to
/// nearest, n_t = n - n_e.
struct SplitSizes {
    std::size_t n_estimation;
    std::size_t n_testing;
    double rho;
};
SplitSizes resolve_split_sizes(std::size_t n, double beta);

struct SplitResult {
    CredalSample x_estimation;
    CredalSample y_estimation;
    CredalSample x_testing;
    CredalSample y_testing;
    // Row indices into the original datasets, ascending per part.
    std::vector<std::vector<std::size_t>> x_estimation_idx, x_testing_idx;
    std::vector<std::vector<std::size_t>> y_estimation_idx, y_testing_idx;
};

/// Randomly assigns floor(n_j * rho) rows of each dataset to the estimation
/// part and the rest to the testing part. In DoubleDip mode the estimation
/// part is the full data and the testing part a random subset of size
/// floor(n_j^(1-beta)); beta is only read in that mode.
SplitResult split_data(const CredalSample& sx, const CredalSample& sy, double rho, Rng& rng,
                       SplitMode mode = SplitMode::Split, double beta = 0.0);

struct RedrawStats {
    std::size_t exhausted_events = 0;
};

/// Draws mixture samples without replacement: repeatedly pick a component
/// from the categorical weight law, then a uniformly random remaining row of
/// that component. Each side stops at its minimum per-component size. A
/// drawn component that is already empty triggers a renormalised redraw over
/// the non-empty components (counted in stats).
std::pair<Dataset, Dataset> redraw_samples(const CredalSample& sx, const CredalSample& sy,
                                           const Weights& lambda, const Weights& eta, Rng& rng,
                                           RedrawStats* stats = nullptr);

}  // namespace credal
