#include "credal/mmd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "credal/parallel.hpp"
#include "credal/simd.hpp"

namespace credal {

const char* to_string(Decision d) {
    return d == Decision::Reject ? "Reject" : "FailToReject";
}

const char* to_string(NullCalibration c) {
    return c == NullCalibration::WildBootstrap ? "wild-bootstrap" : "permutation";
}

std::string TestReport::to_json() const {
    nlohmann::json j;
    j["decision"] = to_string(decision);
    j["p_value"] = p_value;
    j["statistic"] = statistic;
    j["permutations"] = permutations_used;
    j["alpha"] = alpha;
    j["metadata"] = metadata;
    return j.dump();
}

std::string TestReport::to_text() const {
    std::ostringstream out;
    out << "decision: " << to_string(decision) << '\n';
    out << "p_value: " << format_double(p_value) << '\n';
    out << "statistic: " << format_double(statistic) << '\n';
    out << "permutations: " << permutations_used << '\n';
    out << "alpha: " << format_double(alpha) << '\n';
    for (const auto& [key, value] : metadata)
        out << key << ": " << value << '\n';
    return out.str();
}

namespace {

void check_paired_sizes(const Dataset& x, const Dataset& y) {
    if (x.dim() != y.dim())
        throw InvalidInputError("two-sample inputs must share one dimension");
    if (x.size() != y.size())
        throw InvalidInputError("two-sample inputs must have equal sizes");
    if (x.size() < 2)
        throw InsufficientSamplesError("two-sample statistic needs at least two pairs");
}

// H_ij = k(x_i,x_j) + k(y_i,y_j) - k(x_i,y_j) - k(x_j,y_i); symmetric.
Matrix h_matrix(const KernelSpec& spec, const Dataset& x, const Dataset& y) {
    const std::size_t n = x.size();
    Matrix h = gram_matrix(spec, x, x);
    {
        const Matrix kyy = gram_matrix(spec, y, y);
        const Matrix kxy = gram_matrix(spec, x, y);
        for (std::size_t i = 0; i < n; ++i) {
            const double* yy = kyy.row(i);
            const double* xy = kxy.row(i);
            double* row = h.row(i);
            for (std::size_t j = 0; j < n; ++j)
                row[j] += yy[j] - xy[j] - kxy(j, i);
        }
    }
    return h;
}

double u_statistic_from_h(const Matrix& h) {
    const std::size_t n = h.rows();
    const auto& ops = simd::active();
    double total = ops.sum(h.data(), n * n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        trace += h(i, i);
    return (total - trace) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

double mmd2_unbiased(const KernelSpec& spec, const Dataset& x, const Dataset& y) {
    check_paired_sizes(x, y);
    const std::size_t n = x.size();
    const double scale = 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
    spec.validate();
    const auto& ops = simd::active();
    const Matrix xt = x.values().transposed();
    const Matrix yt = y.values().transposed();
    std::vector<double> row(n);
    double sum_xx = 0.0;
    double sum_yy = 0.0;
    double sum_xy = 0.0;
    double diag_xy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ops.sqdist_row(x.row(i).data(), xt.data(), n, x.dim(), n, row.data());
        ops.exp_neg_scale(row.data(), n, scale);
        sum_xx += ops.sum(row.data(), n) - row[i];

        ops.sqdist_row(y.row(i).data(), yt.data(), n, y.dim(), n, row.data());
        ops.exp_neg_scale(row.data(), n, scale);
        sum_yy += ops.sum(row.data(), n) - row[i];

        ops.sqdist_row(x.row(i).data(), yt.data(), n, x.dim(), n, row.data());
        ops.exp_neg_scale(row.data(), n, scale);
        sum_xy += ops.sum(row.data(), n);
        diag_xy += row[i];
    }
    const double denom = static_cast<double>(n) * static_cast<double>(n - 1);
    return (sum_xx + sum_yy - 2.0 * (sum_xy - diag_xy)) / denom;
}

namespace {

double permuted_u_statistic(const Matrix& kzz, std::span<const std::size_t> pi, std::size_t n) {
    // Paired U-statistic after reassigning pooled indices: x'_i = z_{pi[i]},
    // y'_i = z_{pi[n+i]}.
    double acc = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row_x = kzz.row(pi[i]);
        const double* row_y = kzz.row(pi[n + i]);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += row_x[pi[j]] + row_y[pi[n + j]] - row_x[pi[n + j]] - row_y[pi[j]];
        acc += s;
        diag += row_x[pi[i]] + row_y[pi[n + i]] - 2.0 * row_x[pi[n + i]];
    }
    return (acc - diag) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

TestReport kernel_2s_test(const KernelSpec& spec, const Dataset& x, const Dataset& y, int b,
                          double alpha, Rng& rng, NullCalibration calibration, int threads) {
    check_paired_sizes(x, y);
    if (b < 1)
        throw InvalidInputError("number of simulated statistics must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInputError("alpha must lie strictly between 0 and 1");
    spec.validate();

    const std::size_t n = x.size();
    const double denom = static_cast<double>(n) * static_cast<double>(n - 1);
    const Rng replicate_root = rng.fork();

    double m0 = 0.0;
    std::atomic<long long> count_ge{0};

    if (calibration == NullCalibration::WildBootstrap) {
        const Matrix h = h_matrix(spec, x, y);
        m0 = u_statistic_from_h(h);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            trace += h(i, i);
        parallel_for(static_cast<std::size_t>(b), threads, [&](std::size_t rep) {
            Rng r = replicate_root.substream(rep + 1);
            std::vector<double> signs(n);
            for (double& s : signs)
                s = r.rademacher();
            const double quad = simd::signed_quadform(h.data(), n, signs.data());
            const double mb = (quad - trace) / denom;
            if (mb >= m0)
                count_ge.fetch_add(1, std::memory_order_relaxed);
        });
    } else {
        // Pooled kernel matrix; observed statistic read off its blocks.
        Matrix pooled(2 * n, x.dim());
        for (std::size_t i = 0; i < n; ++i) {
            std::copy(x.row(i).begin(), x.row(i).end(), pooled.row(i));
            std::copy(y.row(i).begin(), y.row(i).end(), pooled.row(n + i));
        }
        const Dataset z(std::move(pooled));
        const Matrix kzz = gram_matrix(spec, z, z);
        std::vector<std::size_t> identity(2 * n);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        m0 = permuted_u_statistic(kzz, identity, n);
        parallel_for(static_cast<std::size_t>(b), threads, [&](std::size_t rep) {
            Rng r = replicate_root.substream(rep + 1);
            std::vector<std::size_t> pi(2 * n);
            std::iota(pi.begin(), pi.end(), std::size_t{0});
            r.partial_shuffle(pi, pi.size());
            const double mb = permuted_u_statistic(kzz, pi, n);
            if (mb >= m0)
                count_ge.fetch_add(1, std::memory_order_relaxed);
        });
    }

    TestReport report;
    report.p_value = (1.0 + static_cast<double>(count_ge.load())) / (static_cast<double>(b) + 1.0);
    report.decision = report.p_value < alpha ? Decision::Reject : Decision::FailToReject;
    report.statistic = m0;
    report.permutations_used = b;
    report.alpha = alpha;
    report.metadata["n"] = std::to_string(n);
    report.metadata["B"] = std::to_string(b);
    report.metadata["bandwidth"] = format_double(spec.bandwidth);
    report.metadata["calibration"] = to_string(calibration);
    report.metadata["scaled_statistic"] = format_double(static_cast<double>(n) * m0);
    return report;
}

}  // namespace credal
