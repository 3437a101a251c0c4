// Acceptance suite: end-to-end checks with pinned tolerances, one line of
// output per criterion. Exits nonzero if any criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "credal/credal_tests.hpp"
#include "credal/harness.hpp"
#include "credal/parallel.hpp"
#include "credal/synthgen.hpp"

#include "../support/oracles.hpp"
#include "../support/stats.hpp"

using namespace credal;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& note) {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += note;
        }
    }
    void info(const std::string& note) {
        if (!detail.empty())
            detail += "; ";
        detail += note;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// --- 1. oracle equivalence ---------------------------------------------

Outcome oracle_equivalence() {
    Outcome out;
    Rng rng(910);
    double worst_kcd = 0.0;
    double worst_mmd = 0.0;
    for (int trial = 0; trial < 110; ++trial) {
        const std::size_t d = 1 + rng.below(4);
        const std::size_t l = 1 + rng.below(3);
        const std::size_t r = 1 + rng.below(3);
        const std::size_t n = 4 + rng.below(17);  // up to 20
        const double sigma = rng.uniform(0.5, 2.0);

        const CredalSample sx = oracle::random_credal(rng, l, n, d);
        const CredalSample sy = oracle::random_credal(rng, r, n, d);
        const KcdGrams g = kme_grams(KernelSpec::gaussian(sigma), sx, sy);
        const Weights lambda(rng.simplex_uniform(l));
        const Weights eta(rng.simplex_uniform(r));
        worst_kcd = std::max(worst_kcd,
                             std::abs(kcd_value(g, lambda, eta) -
                                      oracle::kcd_value(sx, sy, lambda.values(), eta.values(),
                                                        sigma)));

        const Dataset x = oracle::random_dataset(rng, n, d);
        const Dataset y = oracle::random_dataset(rng, n, d);
        worst_mmd = std::max(worst_mmd,
                             std::abs(mmd2_unbiased(KernelSpec::gaussian(sigma), x, y) -
                                      oracle::mmd2_unbiased(x, y, sigma)));
    }
    out.require(worst_kcd <= 1e-12, "kcd deviation " + fmt(worst_kcd));
    out.require(worst_mmd <= 1e-12, "mmd deviation " + fmt(worst_mmd));
    out.info("kcd " + fmt(worst_kcd) + ", mmd " + fmt(worst_mmd));
    return out;
}

// --- 2. gradient check ---------------------------------------------------

Outcome gradient_check() {
    Outcome out;
    Rng rng(920);
    const double step = 1e-6;
    double worst = 0.0;
    for (int trial = 0; trial < 110; ++trial) {
        const std::size_t l = 1 + rng.below(3);
        const std::size_t r = 1 + rng.below(3);
        const CredalSample sx = oracle::random_credal(rng, l, 4 + rng.below(8), 2);
        const CredalSample sy = oracle::random_credal(rng, r, 4 + rng.below(8), 2);
        const KcdGrams g = kme_grams(KernelSpec::gaussian(rng.uniform(0.6, 1.8)), sx, sy);
        const std::vector<double> lam = rng.simplex_uniform(l);
        const std::vector<double> eta = rng.simplex_uniform(r);
        const auto [d_lam, d_eta] = kcd_gradient(g, Weights(lam), Weights(eta));

        auto value = [&](std::span<const double> a, std::span<const double> b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j)
                    acc += a[i] * a[j] * g.mxx(i, j);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    acc += b[i] * b[j] * g.myy(i, j);
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    acc -= 2.0 * a[i] * b[j] * g.mxy(i, j);
            return acc;
        };
        for (std::size_t i = 0; i < l; ++i) {
            std::vector<double> hi = lam, lo = lam;
            hi[i] += step;
            lo[i] -= step;
            worst = std::max(worst,
                             std::abs((value(hi, eta) - value(lo, eta)) / (2.0 * step) -
                                      d_lam[i]));
        }
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<double> hi = eta, lo = eta;
            hi[j] += step;
            lo[j] -= step;
            worst = std::max(worst,
                             std::abs((value(lam, hi) - value(lam, lo)) / (2.0 * step) -
                                      d_eta[j]));
        }
    }
    out.require(worst <= 1e-5, "gradient deviation " + fmt(worst));
    out.info("worst " + fmt(worst));
    return out;
}

// --- 3. convex solver optimality -----------------------------------------

Outcome convex_optimality() {
    Outcome out;
    Rng rng(930);
    double worst_gap = -1.0;
    for (int trial = 0; trial < 55; ++trial) {
        const std::size_t r = 1 + rng.below(3);
        const CredalSample sx = oracle::random_credal(rng, 1, 5 + rng.below(10), 2);
        const CredalSample sy = oracle::random_credal(rng, r, 5 + rng.below(10), 2);
        const KcdGrams g = kme_grams(KernelSpec::gaussian(rng.uniform(0.5, 2.0)), sx, sy);
        const OptResult res = minimize_eta(g, OptimizerConfig{});

        double grid_best = 1e300;
        auto eval = [&](std::vector<double> w) {
            grid_best = std::min(grid_best,
                                 kcd_value(g, Weights::uniform(1), Weights(std::move(w))));
        };
        const int resolution = 1000;
        if (r == 1) {
            eval({1.0});
        } else if (r == 2) {
            for (int a = 0; a <= resolution; ++a)
                eval({a / 1000.0, 1.0 - a / 1000.0});
        } else {
            for (int a = 0; a <= resolution; ++a)
                for (int b = 0; a + b <= resolution; ++b)
                    eval({a / 1000.0, b / 1000.0, 1.0 - a / 1000.0 - b / 1000.0});
        }
        worst_gap = std::max(worst_gap, res.objective - grid_best);
    }
    out.require(worst_gap <= 1e-6, "optimality gap " + fmt(worst_gap));
    out.info("worst gap " + fmt(worst_gap));
    return out;
}

// --- 4. permutation exactness --------------------------------------------

Outcome permutation_exactness() {
    Outcome out;
    const int reps = 1000;
    std::atomic<int> rejections{0};
    parallel_for(reps, 0, [&](std::size_t rep) {
        Rng rng(mix_seed(940, rep));
        const std::vector<double> zero(10, 0.0);
        const Dataset x = sample_gaussian_extreme(zero, 200, rng);
        const Dataset y = sample_gaussian_extreme(zero, 200, rng);
        std::vector<const Dataset*> pool{&x, &y};
        const KernelSpec spec = KernelSpec::gaussian(median_heuristic_bandwidth(pool));
        Rng trng = rng.substream("test");
        if (kernel_2s_test(spec, x, y, 500, 0.05, trng).decision == Decision::Reject)
            rejections.fetch_add(1);
    });
    const auto [lo, hi] = teststat::binomial_interval(reps, 0.05, 0.99);
    out.require(rejections.load() >= lo && rejections.load() <= hi,
                "rejections " + std::to_string(rejections.load()) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    out.info("rate " + fmt(rejections.load() / static_cast<double>(reps)) + " in [" +
             fmt(lo / static_cast<double>(reps)) + ", " + fmt(hi / static_cast<double>(reps)) +
             "]");
    return out;
}

// --- 5 / 6 / 7: paper reproduction ----------------------------------------

double rejection_rate(TestKind kind, Hypothesis hyp, std::size_t n, double beta, int reps,
                      std::uint64_t master_seed) {
    ExperimentConfig cfg;
    cfg.scenario.test_kind = kind;
    cfg.scenario.hypothesis = hyp;
    cfg.scenario.d = 10;
    cfg.scenario.r = 3;
    cfg.scenario.ell = 3;
    cfg.n_grid = {n};
    cfg.beta_grid = {beta};
    cfg.repetitions = reps;
    cfg.master_seed = master_seed;
    cfg.threads = 0;
    const RejectionRecord rec = run_experiment_cell(cfg, n, beta, nullptr);
    return rec.rate;
}

Outcome type_one_reproduction() {
    Outcome out;
    const double rate_third = rejection_rate(TestKind::Specification, Hypothesis::Null, 2048,
                                             1.0 / 3.0, 300, 950);
    const double rate_quarter = rejection_rate(TestKind::Specification, Hypothesis::Null, 2048,
                                               0.25, 300, 950);
    const double rate_fixed = rejection_rate(TestKind::Specification, Hypothesis::Null, 2048,
                                             0.0, 300, 950);
    out.require(rate_third >= 0.02 && rate_third <= 0.09,
                "CMMD(1/3) " + fmt(rate_third) + " outside [0.02, 0.09]");
    out.require(rate_quarter >= 0.02 && rate_quarter <= 0.09,
                "CMMD(1/4) " + fmt(rate_quarter) + " outside [0.02, 0.09]");
    out.require(rate_fixed >= 0.10, "CMMD(0) " + fmt(rate_fixed) + " below 0.10");
    out.info("CMMD(1/3) " + fmt(rate_third) + ", CMMD(1/4) " + fmt(rate_quarter) +
             ", CMMD(0) " + fmt(rate_fixed));
    return out;
}

Outcome plausibility_reproduction() {
    Outcome out;
    const double rate_third = rejection_rate(TestKind::Plausibility, Hypothesis::Null, 3000,
                                             1.0 / 3.0, 300, 960);
    const double rate_fixed = rejection_rate(TestKind::Plausibility, Hypothesis::Null, 3000,
                                             0.0, 300, 960);
    out.require(rate_third >= 0.01 && rate_third <= 0.09,
                "CMMD(1/3) " + fmt(rate_third) + " outside [0.01, 0.09]");
    out.require(rate_fixed >= 0.09 && rate_fixed <= 0.20,
                "CMMD(0) " + fmt(rate_fixed) + " outside [0.09, 0.20]");
    out.info("CMMD(1/3) " + fmt(rate_third) + ", CMMD(0) " + fmt(rate_fixed));
    return out;
}

Outcome power_consistency() {
    Outcome out;
    const int reps = 200;
    const std::vector<std::size_t> grid{512, 1024, 2048};
    std::vector<double> rates;
    for (const std::size_t n : grid)
        rates.push_back(
            rejection_rate(TestKind::Specification, Hypothesis::Alternative, n, 0.25, reps, 970));
    out.require(rates.back() >= 0.9, "power at n=2048 is " + fmt(rates.back()));
    for (std::size_t i = 1; i < rates.size(); ++i) {
        const double slack =
            2.0 * std::sqrt(rates[i - 1] * (1.0 - rates[i - 1]) / reps +
                            rates[i] * (1.0 - rates[i]) / reps);
        out.require(rates[i] >= rates[i - 1] - slack,
                    "power dropped from " + fmt(rates[i - 1]) + " to " + fmt(rates[i]) +
                        " between n=" + std::to_string(grid[i - 1]) + " and n=" +
                        std::to_string(grid[i]));
    }
    std::string curve;
    for (std::size_t i = 0; i < rates.size(); ++i)
        curve += (i ? ", " : "") + std::to_string(grid[i]) + ":" + fmt(rates[i]);
    out.info(curve);
    return out;
}

// --- 8. split-ratio law ----------------------------------------------------

Outcome split_ratio_law() {
    Outcome out;
    for (const double beta : {0.0, 0.25, 1.0 / 3.0}) {
        for (const std::size_t n : {512, 1024, 2048, 4096}) {
            const SplitSizes sizes = resolve_split_sizes(n, beta);
            const double ne = static_cast<double>(sizes.n_estimation);
            const double nt = static_cast<double>(sizes.n_testing);
            const double gap = std::abs(nt / ne - std::pow(ne, -beta));
            out.require(gap <= 2.0 / ne,
                        "ratio law broken at n=" + std::to_string(n) + ", beta=" + fmt(beta) +
                            " (gap " + fmt(gap) + ")");
        }
    }
    out.require(adaptive_split_ratio(512, 0.0) == 0.5, "beta=0 is not an exact 50:50 split");
    out.require(adaptive_split_ratio(4096, 0.0) == 0.5, "beta=0 is not an exact 50:50 split");
    return out;
}

// --- 9. redraw correctness ---------------------------------------------------

Outcome redraw_correctness() {
    Outcome out;
    Rng data_rng(980);

    // Disjoint estimation/testing indices after splitting.
    const CredalSample sx = oracle::random_credal(data_rng, 2, 57, 3);
    const CredalSample sy = oracle::random_credal(data_rng, 3, 41, 3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng srng(seed);
        const SplitResult split = split_data(sx, sy, 0.61, srng);
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<std::size_t> all = split.x_estimation_idx[j];
            all.insert(all.end(), split.x_testing_idx[j].begin(), split.x_testing_idx[j].end());
            std::sort(all.begin(), all.end());
            const bool unique = std::adjacent_find(all.begin(), all.end()) == all.end();
            out.require(unique && all.size() == 57, "estimation/testing indices overlap");
        }
    }

    // Output sizes equal per-side minima.
    const CredalSample uneven_x({oracle::random_dataset(data_rng, 33, 2),
                                 oracle::random_dataset(data_rng, 57, 2)});
    const CredalSample uneven_y({oracle::random_dataset(data_rng, 71, 2),
                                 oracle::random_dataset(data_rng, 44, 2)});
    Rng rrng(1);
    const auto [rx, ry] =
        redraw_samples(uneven_x, uneven_y, Weights::uniform(2), Weights::uniform(2), rrng);
    out.require(rx.size() == 33 && ry.size() == 44, "redraw sizes miss the per-side minima");

    // Component frequencies across 20 seeds, far from exhaustion.
    std::vector<Dataset> parts;
    for (int j = 0; j < 3; ++j) {
        Matrix m(6000, 1);
        for (std::size_t i = 0; i < 6000; ++i)
            m(i, 0) = j + 10.0 * static_cast<double>(i);
        parts.emplace_back(std::move(m));
    }
    const CredalSample comp(std::move(parts));
    const std::vector<double> probs{0.5, 0.3, 0.2};
    int gof_failures = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed + 100);
        RedrawStats stats;
        const auto [x, y] =
            redraw_samples(comp, comp, Weights(probs), Weights(probs), rng, &stats);
        out.require(stats.exhausted_events == 0, "unexpected exhaustion");
        std::vector<std::size_t> counts(3, 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            ++counts[static_cast<int>(std::lround(x.row(i)[0])) % 10];
        if (teststat::chi_square_gof_pvalue(counts, probs) <= 0.001)
            ++gof_failures;
    }
    out.require(gof_failures == 0,
                std::to_string(gof_failures) + " of 20 seeds failed the chi-square check");
    return out;
}

// --- 10. determinism --------------------------------------------------------

Outcome determinism() {
    Outcome out;

    ScenarioSpec scenario;
    scenario.test_kind = TestKind::Plausibility;
    scenario.n = 256;
    scenario.d = 4;
    scenario.r = 2;
    scenario.ell = 2;
    scenario.seed = 99;
    const BuiltScenario data = build_scenario(scenario, 7);
    CredalTestConfig cfg;
    cfg.seed = 424242;
    cfg.permutations = 199;
    const std::string a = plausibility_test(data.x, data.y, cfg).to_json();
    const std::string b = plausibility_test(data.x, data.y, cfg).to_json();
    out.require(a == b, "plausibility reports differ across identical runs");

    ExperimentConfig exp;
    exp.scenario.test_kind = TestKind::Specification;
    exp.scenario.d = 3;
    exp.scenario.r = 2;
    exp.n_grid = {96};
    exp.beta_grid = {0.25};
    exp.repetitions = 8;
    exp.permutations = 99;
    exp.master_seed = 31415;
    exp.threads = 0;
    const RejectionRecord r1 = run_experiment_cell(exp, 96, 0.25, nullptr);
    const RejectionRecord r2 = run_experiment_cell(exp, 96, 0.25, nullptr);
    // Timing is measurement, not result: compare everything before it.
    auto stripped = [](const RejectionRecord& r) {
        const std::string row = to_csv_row(r);
        return row.substr(0, row.rfind(','));
    };
    out.require(stripped(r1) == stripped(r2), "experiment cell rows differ across re-runs");
    out.info(stripped(r1));
    return out;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    const std::vector<Criterion> criteria{
        {"oracle equivalence (kcd and mmd vs brute force)", oracle_equivalence},
        {"gradient check (central finite differences)", gradient_check},
        {"convex solver optimality vs grid search", convex_optimality},
        {"permutation exactness under exchangeability", permutation_exactness},
        {"type-I reproduction, specification at n=2048", type_one_reproduction},
        {"plausibility reproduction at n=3000", plausibility_reproduction},
        {"power consistency, specification alternative", power_consistency},
        {"adaptive split-ratio law", split_ratio_law},
        {"redraw correctness", redraw_correctness},
        {"determinism of reports and experiment cells", determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const std::string label = std::to_string(i + 1) + ". " + criteria[i].name;
        if (!filter.empty() && label.find(filter) == std::string::npos)
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %s%s%s  [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", label.c_str(),
                    outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        if (!outcome.pass)
            ++failures;
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
