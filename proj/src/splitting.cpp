#include "credal/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

const char* to_string(SplitMode m) {
    return m == SplitMode::Split ? "split" : "double-dip";
}

double adaptive_split_ratio(std::size_t n, double beta, double tol, int max_iter) {
    if (n < 4)
        throw InvalidInputError("adaptive split ratio needs n >= 4");
    if (!(beta >= 0.0 && beta < 1.0))
        throw InvalidInputError("split exponent beta must lie in [0, 1)");
    if (!(tol > 0.0) || max_iter < 1)
        throw InvalidInputError("invalid tolerance or iteration limit");

    const double nd = static_cast<double>(n);
    double ne = std::floor(nd / 2.0);
    for (int it = 0; it < max_iter; ++it) {
        const double f = ne + std::pow(ne, 1.0 - beta) - nd;
        const double fp = 1.0 + (1.0 - beta) * std::pow(ne, -beta);
        const double next = ne - f / fp;
        if (std::abs(next - ne) < tol) {
            if (!(next > 0.0 && next < nd))
                throw ConvergenceError("adaptive split ratio left (0, n)");
            return next / nd;
        }
        ne = next;
    }
    throw ConvergenceError("adaptive split ratio did not converge");
}

SplitSizes resolve_split_sizes(std::size_t n, double beta) {
    const double rho = adaptive_split_ratio(n, beta);
    const auto ne = static_cast<std::size_t>(std::llround(rho * static_cast<double>(n)));
    if (ne == 0 || ne >= n)
        throw InvalidSplitError("split sizes degenerate");
    return {ne, n - ne, rho};
}

namespace {

struct PartIndices {
    std::vector<std::size_t> estimation;
    std::vector<std::size_t> testing;
};

PartIndices split_one(std::size_t n, double rho, Rng& rng, SplitMode mode, double beta) {
    if (n < 2)
        throw InvalidSplitError("every dataset needs at least two rows to split");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    if (mode == SplitMode::DoubleDip) {
        const auto nt = static_cast<std::size_t>(
            std::floor(std::pow(static_cast<double>(n), 1.0 - beta)));
        if (nt < 2)
            throw InvalidSplitError("double-dip testing subset would be too small");
        rng.partial_shuffle(idx, nt);
        PartIndices parts;
        parts.testing.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nt));
        std::sort(parts.testing.begin(), parts.testing.end());
        parts.estimation.resize(n);
        std::iota(parts.estimation.begin(), parts.estimation.end(), std::size_t{0});
        return parts;
    }

    const auto ne = static_cast<std::size_t>(std::floor(static_cast<double>(n) * rho));
    if (ne == 0 || ne >= n)
        throw InvalidSplitError("split ratio leaves an empty estimation or testing part");
    rng.partial_shuffle(idx, ne);
    PartIndices parts;
    parts.estimation.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(ne));
    parts.testing.assign(idx.begin() + static_cast<std::ptrdiff_t>(ne), idx.end());
    std::sort(parts.estimation.begin(), parts.estimation.end());
    std::sort(parts.testing.begin(), parts.testing.end());
    return parts;
}

}  // namespace

SplitResult split_data(const CredalSample& sx, const CredalSample& sy, double rho, Rng& rng,
                       SplitMode mode, double beta) {
    if (mode == SplitMode::Split && !(rho > 0.0 && rho < 1.0))
        throw InvalidInputError("split ratio must lie strictly between 0 and 1");

    std::vector<Dataset> xe, xt, ye, yt;
    std::vector<std::vector<std::size_t>> xe_idx, xt_idx, ye_idx, yt_idx;
    for (const Dataset& d : sx.extremes()) {
        PartIndices parts = split_one(d.size(), rho, rng, mode, beta);
        xe.push_back(d.take_rows(parts.estimation));
        xt.push_back(d.take_rows(parts.testing));
        xe_idx.push_back(std::move(parts.estimation));
        xt_idx.push_back(std::move(parts.testing));
    }
    for (const Dataset& d : sy.extremes()) {
        PartIndices parts = split_one(d.size(), rho, rng, mode, beta);
        ye.push_back(d.take_rows(parts.estimation));
        yt.push_back(d.take_rows(parts.testing));
        ye_idx.push_back(std::move(parts.estimation));
        yt_idx.push_back(std::move(parts.testing));
    }
    return {CredalSample(std::move(xe)), CredalSample(std::move(ye)),
            CredalSample(std::move(xt)), CredalSample(std::move(yt)),
            std::move(xe_idx),           std::move(xt_idx),
            std::move(ye_idx),           std::move(yt_idx)};
}

namespace {

Dataset redraw_side(const CredalSample& s, const Weights& w, Rng& rng, RedrawStats* stats) {
    if (w.size() != s.count())
        throw InvalidInputError("redraw weights must match the extreme-point count");
    const std::size_t target = s.min_size();
    const std::size_t k = s.count();

    std::vector<std::vector<std::size_t>> remaining(k);
    for (std::size_t j = 0; j < k; ++j) {
        remaining[j].resize(s.extreme(j).size());
        std::iota(remaining[j].begin(), remaining[j].end(), std::size_t{0});
    }

    Matrix out(target, s.dim());
    for (std::size_t t = 0; t < target; ++t) {
        std::size_t j = rng.categorical(w.values());
        if (remaining[j].empty()) {
            if (stats)
                ++stats->exhausted_events;
            // Renormalise over components that still have rows; if their
            // weights are all zero, fall back to uniform over them.
            std::vector<double> adjusted(k, 0.0);
            double total = 0.0;
            for (std::size_t c = 0; c < k; ++c)
                if (!remaining[c].empty()) {
                    adjusted[c] = w[c];
                    total += w[c];
                }
            if (total <= 0.0)
                for (std::size_t c = 0; c < k; ++c)
                    adjusted[c] = remaining[c].empty() ? 0.0 : 1.0;
            j = rng.categorical(adjusted);
        }
        auto& rows = remaining[j];
        const std::size_t pick = static_cast<std::size_t>(rng.below(rows.size()));
        const std::size_t row_index = rows[pick];
        rows[pick] = rows.back();
        rows.pop_back();
        const auto src = s.extreme(j).row(row_index);
        std::copy(src.begin(), src.end(), out.row(t));
    }
    return Dataset(std::move(out));
}

}  // namespace

std::pair<Dataset, Dataset> redraw_samples(const CredalSample& sx, const CredalSample& sy,
                                           const Weights& lambda, const Weights& eta, Rng& rng,
                                           RedrawStats* stats) {
    Dataset x = redraw_side(sx, lambda, rng, stats);
    Dataset y = redraw_side(sy, eta, rng, stats);
    return {std::move(x), std::move(y)};
}

}  // namespace credal
