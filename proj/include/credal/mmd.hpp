#pragma once

#include <map>
#include <string>

#include "credal/kernel.hpp"
#include "credal/rng.hpp"
#include "credal/types.hpp"

namespace credal {

enum class Decision { Reject, FailToReject };

const char* to_string(Decision d);

/// Outcome of one hypothesis test. p_value always lies on the permutation
/// grid {(c+1)/(B+1)} for primitive two-sample tests; composite tests carry
/// a Bonferroni-adjusted p instead. decision is Reject exactly when
/// p_value < alpha.
struct TestReport {
    Decision decision = Decision::FailToReject;
    double p_value = 1.0;
    double statistic = 0.0;
    int permutations_used = 0;
    double alpha = 0.0;
    std::map<std::string, std::string> metadata;

    std::string to_json() const;  // deterministic byte-for-byte given the same fields
    std::string to_text() const;
};

/// Unbiased MMD^2 U-statistic over equal-size paired samples,
/// (1/(n(n-1))) sum_{i != j} h(x_i, y_i, x_j, y_j).
double mmd2_unbiased(const KernelSpec& spec, const Dataset& x, const Dataset& y);

enum class NullCalibration { WildBootstrap, Permutation };

const char* to_string(NullCalibration c);

/// Two-sample test of P_X = P_Y. The observed statistic and every simulated
/// null statistic share one precomputed kernel evaluation pass; replicates
/// draw from index-derived substreams so a thread count change cannot alter
/// the result.
TestReport kernel_2s_test(const KernelSpec& spec, const Dataset& x, const Dataset& y, int b,
                          double alpha, Rng& rng,
                          NullCalibration calibration = NullCalibration::WildBootstrap,
                          int threads = 1);

}  // namespace credal
