#pragma once

#include <span>
#include <vector>

#include "credal/kcd.hpp"
#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace credal {

enum class WeightInit { Uniform, RandomDirichlet };

struct OptimizerConfig {
    int max_outer_iters = 200;
    int max_inner_iters = 1000;
    double grad_tol = 1e-7;
    double obj_tol = 1e-10;
    WeightInit init = WeightInit::RandomDirichlet;
    int restarts = 5;

    void validate() const {
        if (max_outer_iters < 1 || max_inner_iters < 1)
            throw InvalidInputError("optimizer iteration limits must be at least one");
        if (!(grad_tol > 0.0) || !(obj_tol > 0.0))
            throw InvalidInputError("optimizer tolerances must be positive");
        if (restarts < 0)
            throw InvalidInputError("restart count must be nonnegative");
    }
};

struct OptResult {
    Weights lambda;
    Weights eta;
    double objective = 0.0;
    bool converged = false;
    int iters = 0;
    std::vector<double> trace;  // objective after each outer step, non-increasing
};

/// Euclidean projection onto the probability simplex (sorted-threshold
/// closed form); idempotent.
Weights project_to_simplex(std::span<const double> v);

/// Minimises the convex objective eta' Myy eta - 2 Mxy[x_row] eta + Mxx[x_row,x_row]
/// over the simplex by projected gradient descent with backtracking.
/// Convexity makes the uniform start canonical; no restarts are needed.
OptResult minimize_eta(const KcdGrams& g, const OptimizerConfig& cfg, std::size_t x_row = 0);

/// Alternating per-block minimisation of the biconvex KCD objective over
/// both simplices; returns the best of cfg.restarts + 1 runs, each started
/// from its own seeded initial point.
OptResult minimize_biconvex(const KcdGrams& g, const OptimizerConfig& cfg, Rng& rng);

}  // namespace credal
