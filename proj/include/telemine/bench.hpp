#pragma once

// Benchmark harness: experiment configuration, the learner registry, a
// holdout run over every selected learner and report rendering.

#include "telemine/dataset.hpp"
#include "telemine/metrics.hpp"
#include "telemine/regressor.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace telemine {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ReportFormat { text, markdown, csv, json, chart };

ReportFormat parse_report_format(std::string_view name);
std::string_view to_string(ReportFormat f);

struct ExperimentConfig {
    std::string data_path = "data/parkinsons_updrs.data";
    std::string target = "total_UPDRS";
    std::vector<std::string> excluded;
    std::uint64_t seed = 1;
    double train_fraction = 0.75;
    std::vector<std::string> learners;  // registry keys; see default_learner_keys()
    ReportFormat format = ReportFormat::text;
    std::string out_path;                          // empty: standard output
    std::map<std::string, std::string> overrides;  // "learner.param" -> value
    bool baseline_test_mean = false;               // RAE/RRSE against the test mean instead
    bool timings = false;                          // include wall-clock seconds in the report
    unsigned threads = 0;                          // 0: one per hardware thread

    ExperimentConfig();

    /// key = value lines; round-trips through parse_config().
    std::string serialize() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

/// Adds one "LEARNER.PARAM=VALUE" override after checking that the learner
/// and parameter exist.
void add_override(ExperimentConfig& config, std::string_view assignment);

/// Throws ConfigError for unknown learners, parameters or bad values.
void validate_config(const ExperimentConfig& config);

struct LearnerInfo {
    std::string key;           // registry key used on the command line
    std::string display_name;  // report name
    std::string category;      // Functions, Rules, Trees, Lazy or Meta
    std::vector<std::string> parameters;
};

/// Registry order is the report order.
const std::vector<LearnerInfo>& learner_registry();
std::vector<std::string> default_learner_keys();

/// Accepts a registry key or display name in any case, ignoring spaces and
/// punctuation. Throws ConfigError when nothing matches.
const LearnerInfo& find_learner(std::string_view name);

/// Trains one learner by key with its overrides ("param" -> value).
std::unique_ptr<Regressor> train_learner(const std::string& key, const TaskView& train,
                                         const std::map<std::string, std::string>& params, std::uint64_t seed);

struct LearnerOutcome {
    LearnerInfo learner;
    std::optional<EvaluationReport> report;  // empty when the learner failed
    std::string error;
    double seconds = 0.0;
};

struct BenchmarkResult {
    ExperimentConfig config;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<std::string> warnings;  // data range warnings
    std::vector<LearnerOutcome> outcomes;

    bool all_succeeded() const;
};

BenchmarkResult run_benchmark(const ExperimentConfig& config);

/// Same protocol on an already loaded table; config.data_path is ignored.
BenchmarkResult run_benchmark(const ExperimentConfig& config, const DataTable& table);

std::string render_report(const BenchmarkResult& result, ReportFormat format);

}  // namespace telemine
