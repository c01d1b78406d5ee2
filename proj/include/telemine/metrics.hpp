#pragma once

// The five holdout-evaluation quantities: correlation coefficient, mean
// absolute error, root mean squared error, and the absolute/squared errors
// relative to a mean-predicting baseline.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace telemine {

class MetricsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The "simple predictor" that always answers `reference_mean`.
struct BaselinePredictor {
    double reference_mean = 0.0;
};

struct EvaluationReport {
    std::string learner_name;
    // nullopt when predictions or actuals have zero variance.
    std::optional<double> correlation_coefficient;
    double mean_absolute_error = 0.0;
    double root_mean_squared_error = 0.0;
    double relative_absolute_error_pct = 0.0;
    double root_relative_squared_error_pct = 0.0;
    std::size_t n_test = 0;
};

EvaluationReport evaluate(std::span<const double> predicted, std::span<const double> actual,
                          const BaselinePredictor& baseline, std::string name = {});

/// Sample Pearson correlation; nullopt if either side is constant.
std::optional<double> pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace telemine
