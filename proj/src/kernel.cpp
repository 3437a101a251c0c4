#include "credal/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "credal/rng.hpp"
#include "credal/simd.hpp"

namespace credal {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
    spec.validate();
    if (x.size() != y.size() || x.empty())
        throw InvalidInputError("kernel_eval: points must share a positive dimension");
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double diff = x[c] - y[c];
        sq += diff * diff;
    }
    return std::exp(-sq / (2.0 * spec.bandwidth * spec.bandwidth));
}

namespace {

// Coordinate-major copy so the row kernels read contiguous lanes.
Matrix coordinate_major(const Dataset& b) { return b.values().transposed(); }

double inv_two_sigma_sq(const KernelSpec& spec) {
    spec.validate();
    return 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
}

}  // namespace

Matrix gram_matrix(const KernelSpec& spec, const Dataset& a, const Dataset& b) {
    if (a.dim() != b.dim())
        throw InvalidInputError("gram_matrix: datasets must share one dimension");
    const double scale = inv_two_sigma_sq(spec);
    const auto& ops = simd::active();
    const Matrix bt = coordinate_major(b);
    Matrix g(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double* row = g.row(i);
        ops.sqdist_row(a.row(i).data(), bt.data(), b.size(), b.dim(), b.size(), row);
        ops.exp_neg_scale(row, b.size(), scale);
    }
    return g;
}

double gram_mean(const KernelSpec& spec, const Dataset& a, const Dataset& b) {
    if (a.dim() != b.dim())
        throw InvalidInputError("gram_mean: datasets must share one dimension");
    const double scale = inv_two_sigma_sq(spec);
    const auto& ops = simd::active();
    const Matrix bt = coordinate_major(b);
    std::vector<double> row(b.size());
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ops.sqdist_row(a.row(i).data(), bt.data(), b.size(), b.dim(), b.size(), row.data());
        ops.exp_neg_scale(row.data(), b.size(), scale);
        total += ops.sum(row.data(), b.size());
    }
    return total / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

namespace {

struct PooledRows {
    Matrix rows;  // n x d

    explicit PooledRows(std::span<const Dataset* const> datasets) {
        std::size_t total = 0;
        if (datasets.empty())
            throw InvalidInputError("median heuristic needs at least one dataset");
        const std::size_t d = datasets.front()->dim();
        for (const Dataset* ds : datasets) {
            if (ds->dim() != d)
                throw InvalidInputError("median heuristic: datasets must share one dimension");
            total += ds->size();
        }
        if (total < 2)
            throw InvalidInputError("median heuristic needs at least two pooled rows");
        rows = Matrix(total, d);
        std::size_t at = 0;
        for (const Dataset* ds : datasets)
            for (std::size_t i = 0; i < ds->size(); ++i, ++at)
                std::copy(ds->row(i).begin(), ds->row(i).end(), rows.row(at));
    }
};

// Squared distances for all pairs i < j, streamed row by row.
template <typename Fn>
void for_each_pair_block(const Matrix& rows, const Matrix& rows_t, Fn&& fn) {
    const auto& ops = simd::active();
    const std::size_t n = rows.rows();
    std::vector<double> buf(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t m = n - i - 1;
        ops.sqdist_row(rows.row(i), rows_t.data() + i + 1, m, rows.cols(), n, buf.data());
        fn(std::span<const double>(buf.data(), m));
    }
}

double select_sq_order_stat_dense(std::vector<double>& sq, std::size_t k) {
    std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(k), sq.end());
    return sq[k];
}

// Exact order statistics of the pairwise squared distances without
// materialising all of them: bracket the target with sampled quantiles,
// then keep only the values inside the bracket.
std::pair<double, double> select_sq_order_stats_streamed(const Matrix& rows,
                                                         const Matrix& rows_t,
                                                         std::size_t k1, std::size_t k2) {
    const std::size_t n = rows.rows();
    const std::size_t pairs = n * (n - 1) / 2;

    Rng rng(0x9d2c5680u);  // fixed: bracketing must not perturb results
    std::vector<double> sample;
    sample.reserve(200000);
    for (std::size_t s = 0; s < 200000; ++s) {
        std::size_t i = static_cast<std::size_t>(rng.below(n));
        std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
        if (j >= i)
            ++j;
        double sq = 0.0;
        for (std::size_t c = 0; c < rows.cols(); ++c) {
            const double diff = rows(i, c) - rows(j, c);
            sq += diff * diff;
        }
        sample.push_back(sq);
    }
    std::sort(sample.begin(), sample.end());
    const double frac_lo = static_cast<double>(k1) / static_cast<double>(pairs);
    const double frac_hi = static_cast<double>(k2) / static_cast<double>(pairs);
    double lo = sample[static_cast<std::size_t>(std::max(0.0, frac_lo - 0.05) * (sample.size() - 1))];
    double hi = sample[static_cast<std::size_t>(std::min(1.0, frac_hi + 0.05) * (sample.size() - 1))];

    for (int attempt = 0; attempt < 8; ++attempt) {
        std::size_t below = 0;
        std::vector<double> kept;
        for_each_pair_block(rows, rows_t, [&](std::span<const double> block) {
            for (double sq : block) {
                if (sq < lo)
                    ++below;
                else if (sq <= hi)
                    kept.push_back(sq);
            }
        });
        if (k1 >= below && k2 < below + kept.size()) {
            const double v1 = select_sq_order_stat_dense(kept, k1 - below);
            const double v2 = (k2 == k1) ? v1 : select_sq_order_stat_dense(kept, k2 - below);
            return {v1, v2};
        }
        if (k1 < below)
            lo = lo > 0.0 ? lo * 0.5 : -1.0;
        if (k2 >= below + kept.size())
            hi = hi > 0.0 ? hi * 2.0 : 1.0;
    }
    throw Error("median heuristic: bracketed selection failed to converge");
}

}  // namespace

double median_heuristic_bandwidth(std::span<const Dataset* const> datasets) {
    const PooledRows pooled(datasets);
    const Matrix& rows = pooled.rows;
    const Matrix rows_t = rows.transposed();
    const std::size_t n = rows.rows();
    const std::size_t pairs = n * (n - 1) / 2;

    // Order statistics wanted on the squared scale; sqrt is monotone.
    const std::size_t k_hi = pairs / 2;
    const std::size_t k_lo = (pairs % 2 == 0) ? k_hi - 1 : k_hi;

    double sq_lo;
    double sq_hi;
    constexpr std::size_t dense_pair_limit = 16u << 20;  // ~128 MiB of doubles
    if (pairs <= dense_pair_limit) {
        std::vector<double> sq;
        sq.reserve(pairs);
        for_each_pair_block(rows, rows_t, [&](std::span<const double> block) {
            sq.insert(sq.end(), block.begin(), block.end());
        });
        sq_hi = select_sq_order_stat_dense(sq, k_hi);
        sq_lo = (k_lo == k_hi) ? sq_hi : select_sq_order_stat_dense(sq, k_lo);
    } else {
        std::tie(sq_lo, sq_hi) = select_sq_order_stats_streamed(rows, rows_t, k_lo, k_hi);
    }

    const double median = 0.5 * (std::sqrt(sq_lo) + std::sqrt(sq_hi));
    if (!(median > 0.0))
        throw DegenerateDataError("median pairwise distance is zero");
    return median;
}

double median_heuristic_bandwidth(const std::vector<Dataset>& datasets) {
    std::vector<const Dataset*> ptrs;
    ptrs.reserve(datasets.size());
    for (const auto& d : datasets)
        ptrs.push_back(&d);
    return median_heuristic_bandwidth(std::span<const Dataset* const>(ptrs));
}

}  // namespace credal
