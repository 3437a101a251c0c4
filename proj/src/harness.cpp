#include "credal/harness.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "credal/parallel.hpp"

namespace credal {

std::string to_csv_row(const RejectionRecord& r) {
    std::ostringstream out;
    out << to_string(r.test) << ',' << to_string(r.hypothesis) << ',' << r.n << ','
        << format_double(r.beta) << ',' << to_string(r.mode) << ',' << r.repetitions << ','
        << r.rejections << ',';
    if (std::isnan(r.rate))
        out << "nan";
    else
        out << format_double(r.rate);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", r.seconds);
    out << ',' << buf;
    return out.str();
}

void write_rejection_csv(std::ostream& out, const std::vector<RejectionRecord>& records) {
    out << kRejectionCsvHeader << '\n';
    for (const auto& r : records)
        out << to_csv_row(r) << '\n';
}

TestReport run_single(TestKind kind, const CredalSample& x, const CredalSample& y,
                      const CredalTestConfig& cfg) {
    switch (kind) {
        case TestKind::Specification:
            if (x.count() != 1)
                throw InvalidInputError(
                    "the specification test takes a single dataset on the X side");
            return specification_test(x.extreme(0), y, cfg);
        case TestKind::Inclusion:
            return inclusion_test(x, y, cfg);
        case TestKind::Equality:
            return equality_test(x, y, cfg);
        case TestKind::Plausibility:
            return plausibility_test(x, y, cfg);
    }
    throw InvalidInputError("unknown test kind");
}

namespace {

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t n, double beta) {
    std::uint64_t s = mix_seed(cfg.master_seed, tag_hash("cell"));
    s = mix_seed(s, static_cast<std::uint64_t>(cfg.scenario.test_kind));
    s = mix_seed(s, static_cast<std::uint64_t>(cfg.scenario.hypothesis));
    s = mix_seed(s, n);
    s = mix_seed(s, std::bit_cast<std::uint64_t>(beta));
    s = mix_seed(s, static_cast<std::uint64_t>(cfg.mode));
    return s;
}

}  // namespace

RejectionRecord run_experiment_cell(const ExperimentConfig& cfg, std::size_t n, double beta,
                                    std::ostream* log) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    ScenarioSpec scenario = cfg.scenario;
    scenario.n = n;
    scenario.seed = mix_seed(cfg.master_seed, tag_hash("layout"));

    CredalTestConfig test_cfg;
    test_cfg.split = SplitConfig{beta, cfg.mode};
    test_cfg.alpha = cfg.alpha;
    test_cfg.permutations = cfg.permutations;
    test_cfg.optimizer = cfg.optimizer;
    test_cfg.calibration = cfg.calibration;
    test_cfg.threads = 1;  // parallelism lives at the repetition level

    const std::uint64_t cell = cell_seed(cfg, n, beta);
    std::atomic<int> rejections{0};
    std::atomic<int> failures{0};

    parallel_for(static_cast<std::size_t>(cfg.repetitions), cfg.threads, [&](std::size_t rep) {
        const std::uint64_t rep_seed = mix_seed(cell, rep);
        try {
            const BuiltScenario data = build_scenario(scenario, mix_seed(rep_seed, 1));
            CredalTestConfig rep_cfg = test_cfg;
            rep_cfg.seed = mix_seed(rep_seed, 2);
            const TestReport report =
                run_single(scenario.test_kind, data.x, data.y, rep_cfg);
            if (report.decision == Decision::Reject)
                rejections.fetch_add(1, std::memory_order_relaxed);
        } catch (const Error&) {
            failures.fetch_add(1, std::memory_order_relaxed);
        }
    });

    RejectionRecord record;
    record.test = cfg.scenario.test_kind;
    record.hypothesis = cfg.scenario.hypothesis;
    record.n = n;
    record.beta = beta;
    record.mode = cfg.mode;
    record.repetitions = cfg.repetitions;
    record.rejections = rejections.load();
    record.failures = failures.load();
    record.rate = static_cast<double>(record.rejections) / cfg.repetitions;
    if (record.failures * 100 > cfg.repetitions)
        record.rate = std::numeric_limits<double>::quiet_NaN();
    record.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (log) {
        *log << "cell test=" << to_string(record.test)
             << " hypothesis=" << to_string(record.hypothesis) << " n=" << n
             << " beta=" << format_double(beta) << " rate=";
        if (std::isnan(record.rate))
            *log << "nan";
        else
            *log << format_double(record.rate);
        *log << " rejections=" << record.rejections << "/" << record.repetitions;
        if (record.failures)
            *log << " failures=" << record.failures;
        *log << " seconds=" << record.seconds << std::endl;
    }
    return record;
}

std::vector<RejectionRecord> run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
    cfg.validate();
    std::vector<RejectionRecord> records;
    records.reserve(cfg.n_grid.size() * cfg.beta_grid.size());
    for (const double beta : cfg.beta_grid)
        for (const std::size_t n : cfg.n_grid)
            records.push_back(run_experiment_cell(cfg, n, beta, log));
    return records;
}

}  // namespace credal
