// credal: command-line front end for the credal two-sample tests.
//
//   credal test spec|incl|eq|plaus   run one test on data files
//   credal experiment                Monte Carlo rejection-rate sweep, CSV out
//   credal ratio                     print the adaptive split ratio for (n, beta)

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "credal/harness.hpp"
#include "credal/io.hpp"
#include "credal/parallel.hpp"

namespace {

struct CommonFlags {
    double alpha = 0.05;
    int permutations = 500;
    double beta = 0.25;
    std::optional<double> bandwidth;
    std::uint64_t seed = 0;
    std::string mode = "split";
    std::string calibration = "wild-bootstrap";
    int threads = 0;
    std::string config_path;
    int restarts = 5;
};

void add_common_flags(CLI::App* app, CommonFlags& flags) {
    app->add_option("--alpha", flags.alpha, "Significance level")->capture_default_str();
    app->add_option("--permutations", flags.permutations, "Simulated null statistics per test")
        ->capture_default_str();
    app->add_option("--beta", flags.beta, "Split exponent: n_t/n_e = n_e^-beta")
        ->capture_default_str();
    app->add_option("--bandwidth", flags.bandwidth,
                    "Gaussian kernel bandwidth (default: median heuristic)");
    app->add_option("--seed", flags.seed, "Master seed")->capture_default_str();
    app->add_option("--mode", flags.mode, "Sample preparation: split or double-dip")
        ->check(CLI::IsMember({"split", "double-dip"}))
        ->capture_default_str();
    app->add_option("--calibration", flags.calibration,
                    "Null calibration: wild-bootstrap or permutation")
        ->check(CLI::IsMember({"wild-bootstrap", "permutation"}))
        ->capture_default_str();
    app->add_option("--threads", flags.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app->add_option("--restarts", flags.restarts, "Random restarts for biconvex alignment")
        ->capture_default_str();
    app->add_option("--config", flags.config_path,
                    "JSON config file; values in it override flags");
}

// The config file wins over flags wherever both are given.
void apply_config(const std::string& path, CommonFlags& flags,
                  nlohmann::json* extra_out = nullptr) {
    if (path.empty())
        return;
    std::ifstream in(path);
    if (!in)
        throw credal::ParseError(path + ": cannot open config file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw credal::ParseError(path + ": " + e.what());
    }
    if (j.contains("alpha"))
        flags.alpha = j["alpha"].get<double>();
    if (j.contains("permutations"))
        flags.permutations = j["permutations"].get<int>();
    if (j.contains("beta"))
        flags.beta = j["beta"].get<double>();
    if (j.contains("bandwidth"))
        flags.bandwidth = j["bandwidth"].get<double>();
    if (j.contains("seed"))
        flags.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("mode"))
        flags.mode = j["mode"].get<std::string>();
    if (j.contains("calibration"))
        flags.calibration = j["calibration"].get<std::string>();
    if (j.contains("threads"))
        flags.threads = j["threads"].get<int>();
    if (j.contains("restarts"))
        flags.restarts = j["restarts"].get<int>();
    if (extra_out)
        *extra_out = j;
}

credal::CredalTestConfig to_test_config(const CommonFlags& flags) {
    credal::CredalTestConfig cfg;
    cfg.alpha = flags.alpha;
    cfg.permutations = flags.permutations;
    cfg.bandwidth = flags.bandwidth;
    cfg.split.beta = flags.beta;
    cfg.split.mode =
        flags.mode == "double-dip" ? credal::SplitMode::DoubleDip : credal::SplitMode::Split;
    cfg.calibration = flags.calibration == "permutation"
                          ? credal::NullCalibration::Permutation
                          : credal::NullCalibration::WildBootstrap;
    cfg.seed = flags.seed;
    cfg.threads = flags.threads <= 0 ? credal::hardware_threads() : flags.threads;
    cfg.optimizer.restarts = flags.restarts;
    cfg.validate();
    return cfg;
}

credal::CredalSample load_side(const std::vector<std::string>& files,
                               std::optional<std::size_t> group_col, const char* side,
                               std::map<std::string, std::string>& notes) {
    if (files.empty())
        throw credal::InvalidInputError(std::string("no input files for the ") + side +
                                        " side");
    if (group_col) {
        if (files.size() != 1)
            throw credal::InvalidInputError(
                "a grouped file must be the only input for its side");
        credal::GroupedSample grouped = credal::read_grouped_file(files[0], *group_col);
        std::string labels;
        std::string sizes;
        for (std::size_t i = 0; i < grouped.group_labels.size(); ++i) {
            if (i) {
                labels += ',';
                sizes += ',';
            }
            labels += std::to_string(grouped.group_labels[i]);
            sizes += std::to_string(grouped.group_sizes[i]);
        }
        notes[std::string(side) + "_groups"] = "[" + labels + "]";
        notes[std::string(side) + "_group_sizes"] = "[" + sizes + "]";
        return grouped.sample;
    }
    return credal::read_credal_files(files);
}

int run_test_command(const std::string& kind_name, const std::vector<std::string>& x_files,
                     const std::vector<std::string>& y_files,
                     std::optional<std::size_t> group_col, const CommonFlags& flags,
                     const std::string& out_path) {
    const credal::TestKind kind = credal::parse_test_kind(kind_name);
    const credal::CredalTestConfig cfg = to_test_config(flags);

    // The group column only makes sense for a side given as one file, and
    // never for the X side of a specification test (a single precise sample).
    const bool x_may_group =
        kind != credal::TestKind::Specification && x_files.size() == 1;
    const std::optional<std::size_t> x_group = x_may_group ? group_col : std::nullopt;
    const std::optional<std::size_t> y_group =
        y_files.size() == 1 ? group_col : std::nullopt;

    std::map<std::string, std::string> notes;
    const credal::CredalSample x = load_side(x_files, x_group, "x", notes);
    const credal::CredalSample y = load_side(y_files, y_group, "y", notes);

    credal::TestReport report = credal::run_single(kind, x, y, cfg);
    report.metadata.insert(notes.begin(), notes.end());

    std::cout << report.to_text();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw credal::Error(out_path + ": cannot open file for writing");
        out << report.to_json() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Credal two-sample hypothesis tests"};
    app.require_subcommand(1);

    // --- test ---
    CLI::App* test_cmd = app.add_subcommand("test", "Run one credal test on data files");
    test_cmd->require_subcommand(1);
    static const std::vector<std::string> kinds{"spec", "incl", "eq", "plaus"};
    struct TestArgs {
        std::vector<std::string> x_files;
        std::vector<std::string> y_files;
        std::optional<std::size_t> group_col;
        CommonFlags flags;
        std::string out_path;
    };
    std::map<std::string, TestArgs> test_args;
    for (const auto& kind : kinds) {
        CLI::App* sub = test_cmd->add_subcommand(kind);
        TestArgs& args = test_args[kind];
        sub->add_option("--x", args.x_files, "X-side data file(s), one per extreme point")
            ->required();
        sub->add_option("--y", args.y_files, "Y-side data file(s), one per extreme point")
            ->required();
        sub->add_option("--group-col", args.group_col,
                        "0-based integer column splitting one file into extreme points");
        sub->add_option("--out", args.out_path, "Also write the report as JSON to this path");
        add_common_flags(sub, args.flags);
    }

    // --- experiment ---
    CLI::App* exp_cmd =
        app.add_subcommand("experiment", "Monte Carlo rejection-rate sweep, CSV output");
    std::string exp_test = "spec";
    std::string exp_hypothesis = "null";
    std::vector<std::size_t> n_grid{128, 256, 512, 1024, 2048};
    std::vector<double> beta_grid;
    int repetitions = 500;
    std::size_t dim = 10, r_count = 3, ell_count = 3;
    double t_dof = 3.0;
    bool dependent_extreme = false;
    CommonFlags exp_flags;
    std::string exp_out;
    exp_cmd->add_option("--test", exp_test, "spec, incl, eq, or plaus")
        ->check(CLI::IsMember(kinds))
        ->capture_default_str();
    exp_cmd->add_option("--hypothesis", exp_hypothesis, "null or alternative")
        ->check(CLI::IsMember({"null", "alternative", "alt"}))
        ->capture_default_str();
    exp_cmd->add_option("--n-grid", n_grid, "Sample sizes per extreme point")
        ->delimiter(',')
        ->capture_default_str();
    exp_cmd->add_option("--beta-grid", beta_grid, "Split exponents (default: the --beta value)")
        ->delimiter(',');
    exp_cmd->add_option("--reps", repetitions, "Repetitions per cell")->capture_default_str();
    exp_cmd->add_option("--d", dim, "Data dimension")->capture_default_str();
    exp_cmd->add_option("--r", r_count, "Y-side extreme points")->capture_default_str();
    exp_cmd->add_option("--ell", ell_count, "X-side extreme points")->capture_default_str();
    exp_cmd->add_option("--t-dof", t_dof, "Student-t degrees of freedom")
        ->capture_default_str();
    exp_cmd->add_flag("--dependent-extreme", dependent_extreme,
                      "Add a Y extreme drawn from a fixed mixture of the others");
    exp_cmd->add_option("--out", exp_out, "Output CSV path (default: stdout)");
    add_common_flags(exp_cmd, exp_flags);

    // --- ratio ---
    CLI::App* ratio_cmd =
        app.add_subcommand("ratio", "Print the adaptive split ratio for (n, beta)");
    std::size_t ratio_n = 0;
    double ratio_beta = 0.25;
    ratio_cmd->add_option("--n", ratio_n, "Total sample size")->required();
    ratio_cmd->add_option("--beta", ratio_beta, "Split exponent")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& kind : kinds) {
            CLI::App* sub = test_cmd->get_subcommand(kind);
            if (sub->parsed()) {
                TestArgs& args = test_args[kind];
                apply_config(args.flags.config_path, args.flags);
                return run_test_command(kind, args.x_files, args.y_files, args.group_col,
                                        args.flags, args.out_path);
            }
        }

        if (exp_cmd->parsed()) {
            nlohmann::json extra;
            apply_config(exp_flags.config_path, exp_flags, &extra);
            if (extra.contains("n_grid"))
                n_grid = extra["n_grid"].get<std::vector<std::size_t>>();
            if (extra.contains("beta_grid"))
                beta_grid = extra["beta_grid"].get<std::vector<double>>();
            if (extra.contains("reps"))
                repetitions = extra["reps"].get<int>();
            if (extra.contains("test"))
                exp_test = extra["test"].get<std::string>();
            if (extra.contains("hypothesis"))
                exp_hypothesis = extra["hypothesis"].get<std::string>();
            if (beta_grid.empty())
                beta_grid = {exp_flags.beta};

            credal::ExperimentConfig cfg;
            cfg.scenario.test_kind = credal::parse_test_kind(exp_test);
            cfg.scenario.hypothesis = credal::parse_hypothesis(exp_hypothesis);
            cfg.scenario.d = dim;
            cfg.scenario.r = r_count;
            cfg.scenario.ell = ell_count;
            cfg.scenario.t_dof = t_dof;
            cfg.scenario.dependent_extreme = dependent_extreme;
            cfg.n_grid = n_grid;
            cfg.beta_grid = beta_grid;
            cfg.repetitions = repetitions;
            cfg.alpha = exp_flags.alpha;
            cfg.permutations = exp_flags.permutations;
            cfg.mode = exp_flags.mode == "double-dip" ? credal::SplitMode::DoubleDip
                                                      : credal::SplitMode::Split;
            cfg.calibration = exp_flags.calibration == "permutation"
                                  ? credal::NullCalibration::Permutation
                                  : credal::NullCalibration::WildBootstrap;
            cfg.optimizer.restarts = exp_flags.restarts;
            cfg.master_seed = exp_flags.seed;
            cfg.threads = exp_flags.threads;

            const auto records = credal::run_experiment(cfg, &std::cerr);
            if (exp_out.empty()) {
                credal::write_rejection_csv(std::cout, records);
            } else {
                std::ofstream out(exp_out);
                if (!out)
                    throw credal::Error(exp_out + ": cannot open file for writing");
                credal::write_rejection_csv(out, records);
            }
            return 0;
        }

        if (ratio_cmd->parsed()) {
            const double rho = credal::adaptive_split_ratio(ratio_n, ratio_beta);
            const auto sizes = credal::resolve_split_sizes(ratio_n, ratio_beta);
            std::cout << "rho: " << credal::format_double(rho) << '\n'
                      << "n_estimation: " << sizes.n_estimation << '\n'
                      << "n_testing: " << sizes.n_testing << '\n';
            return 0;
        }
    } catch (const credal::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
