#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "credal/credal_tests.hpp"
#include "credal/synthgen.hpp"

namespace credal {

/// Monte Carlo sweep over (n, beta) cells; each cell runs `repetitions`
/// independent scenario-build + test cycles and records the rejection rate.
struct ExperimentConfig {
    ScenarioSpec scenario;  // n is taken from n_grid cell by cell
    std::vector<std::size_t> n_grid;
    std::vector<double> beta_grid;
    int repetitions = 500;
    double alpha = 0.05;
    int permutations = 500;
    SplitMode mode = SplitMode::Split;
    NullCalibration calibration = NullCalibration::WildBootstrap;
    OptimizerConfig optimizer;
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0 = all hardware threads

    void validate() const {
        scenario.validate();
        if (n_grid.empty() || beta_grid.empty())
            throw InvalidInputError("experiment grids must be nonempty");
        for (std::size_t i = 1; i < n_grid.size(); ++i)
            if (n_grid[i] <= n_grid[i - 1])
                throw InvalidInputError("n grid must be strictly increasing");
        for (double b : beta_grid)
            if (!(b >= 0.0 && b < 1.0))
                throw InvalidInputError("beta grid entries must lie in [0, 1)");
        if (repetitions < 1)
            throw InvalidInputError("repetitions must be positive");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw InvalidInputError("alpha must lie strictly between 0 and 1");
        if (permutations < 1)
            throw InvalidInputError("permutation count must be positive");
    }
};

struct RejectionRecord {
    TestKind test;
    Hypothesis hypothesis;
    std::size_t n = 0;
    double beta = 0.0;
    SplitMode mode = SplitMode::Split;
    int repetitions = 0;
    int rejections = 0;
    int failures = 0;
    double rate = 0.0;  // NaN marks a cell with more than 1% failed repetitions
    double seconds = 0.0;
};

inline constexpr const char* kRejectionCsvHeader =
    "test,hypothesis,n,beta,mode,reps,rejections,rate,seconds";

std::string to_csv_row(const RejectionRecord& r);

/// Runs every (n, beta) cell. Repetition seeds derive from (master seed,
/// cell, repetition), never sequentially, so any cell can be recomputed
/// alone and still match a full run. One progress line per cell goes to
/// `log` when given.
std::vector<RejectionRecord> run_experiment(const ExperimentConfig& cfg,
                                            std::ostream* log = nullptr);

/// Runs the single-cell core of run_experiment; exposed for cell-level
/// recomputation.
RejectionRecord run_experiment_cell(const ExperimentConfig& cfg, std::size_t n, double beta,
                                    std::ostream* log = nullptr);

void write_rejection_csv(std::ostream& out, const std::vector<RejectionRecord>& records);

/// Dispatches to the right test for already-loaded credal samples. The X
/// side of a specification test must hold exactly one dataset.
TestReport run_single(TestKind kind, const CredalSample& x, const CredalSample& y,
                      const CredalTestConfig& cfg);

}  // namespace credal
