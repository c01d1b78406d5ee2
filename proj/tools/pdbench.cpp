// pdbench: runs the regression benchmark over the voice telemonitoring data
// and prints the holdout report.

#include "telemine/bench.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    using namespace telemine;

    CLI::App app{"Holdout benchmark of eleven regression learners on UPDRS voice telemonitoring data"};
    std::string config_path, save_path, data, target, learners, format, out, baseline;
    std::vector<std::string> excludes, sets;
    std::uint64_t seed = 0;
    double fraction = 0.0;
    unsigned threads = 0;
    bool timings = false, list = false;

    app.add_option("--config", config_path, "Read settings from a key = value file first");
    app.add_option("--data", data, "Path of the comma-separated data file");
    app.add_option("--target", target, "Target column (total_UPDRS or motor_UPDRS)");
    app.add_option("--exclude", excludes, "Drop a column from the predictors (repeatable)");
    app.add_option("--seed", seed, "Master seed for the split and the learners");
    app.add_option("--train-fraction", fraction, "Share of rows used for training");
    app.add_option("--learners", learners, "Comma-separated learner keys (default: all)");
    app.add_option("--format", format, "text, markdown, csv, json or chart");
    app.add_option("--out", out, "Write the report here instead of standard output");
    app.add_option("--set", sets, "Learner parameter override LEARNER.PARAM=VALUE (repeatable)");
    app.add_option("--baseline", baseline, "Mean used by the relative errors: train or test");
    app.add_option("--threads", threads, "Worker threads, 0 for one per core");
    app.add_option("--save-config", save_path, "Write the effective configuration to this file");
    app.add_flag("--timings", timings, "Add per-learner training and prediction seconds");
    app.add_flag("--list-learners", list, "Print learner keys and parameters, then exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& info : learner_registry()) {
            std::cout << info.key << "  (" << info.category << ": " << info.display_name << ")";
            for (const auto& p : info.parameters) std::cout << ' ' << p;
            std::cout << '\n';
        }
        return 0;
    }

    ExperimentConfig config;
    try {
        if (!config_path.empty()) config = load_config_file(config_path);
        if (app.count("--data")) config.data_path = data;
        if (app.count("--target")) config.target = target;
        if (app.count("--exclude")) config.excluded = excludes;
        if (app.count("--seed")) config.seed = seed;
        if (app.count("--train-fraction")) config.train_fraction = fraction;
        if (app.count("--learners")) {
            ExperimentConfig parsed = parse_config("learners = " + learners);
            config.learners = parsed.learners;
        }
        if (app.count("--format")) config.format = parse_report_format(format);
        if (app.count("--out")) config.out_path = out;
        if (app.count("--baseline")) {
            if (baseline != "train" && baseline != "test") throw ConfigError("--baseline: expected train or test");
            config.baseline_test_mean = baseline == "test";
        }
        if (app.count("--threads")) config.threads = threads;
        if (timings) config.timings = true;
        for (const auto& s : sets) add_override(config, s);
        validate_config(config);
    } catch (const std::exception& e) {
        std::cerr << "pdbench: " << e.what() << '\n';
        return 2;
    }

    if (!save_path.empty()) {
        std::ofstream f(save_path);
        f << config.serialize();
        if (!f) {
            std::cerr << "pdbench: cannot write " << save_path << '\n';
            return 2;
        }
    }

    BenchmarkResult result;
    try {
        result = run_benchmark(config);
    } catch (const std::exception& e) {
        std::cerr << "pdbench: " << e.what() << '\n';
        return 2;
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    const std::string report = render_report(result, config.format);
    if (config.out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream f(config.out_path);
        f << report;
        if (!f) {
            std::cerr << "pdbench: cannot write " << config.out_path << '\n';
            return 2;
        }
    }
    return result.all_succeeded() ? 0 : 1;
}
