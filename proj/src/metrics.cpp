#include "telemine/metrics.hpp"

#include <cmath>

namespace telemine {

std::optional<double> pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw MetricsError("pearson_correlation: length mismatch or empty input");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (a.size() < 2 || saa <= 0.0 || sbb <= 0.0) return std::nullopt;
    // n−1 normalisation cancels in the ratio.
    const double denom = n - 1.0;
    double r = (sab / denom) / std::sqrt((saa / denom) * (sbb / denom));
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

EvaluationReport evaluate(std::span<const double> predicted, std::span<const double> actual,
                          const BaselinePredictor& baseline, std::string name) {
    if (predicted.size() != actual.size())
        throw MetricsError("evaluate: " + std::to_string(predicted.size()) + " predictions for " +
                           std::to_string(actual.size()) + " actual values");
    if (actual.empty()) throw MetricsError("evaluate: empty input");

    double abs_err = 0.0, sq_err = 0.0, base_abs = 0.0, base_sq = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = predicted[i] - actual[i];
        const double be = baseline.reference_mean - actual[i];
        abs_err += std::abs(e);
        sq_err += e * e;
        base_abs += std::abs(be);
        base_sq += be * be;
    }
    if (base_abs == 0.0 || base_sq == 0.0)
        throw MetricsError("evaluate: every actual value equals the baseline mean; relative errors are undefined");

    const double n = static_cast<double>(actual.size());
    EvaluationReport r;
    r.learner_name = std::move(name);
    r.n_test = actual.size();
    r.correlation_coefficient = pearson_correlation(predicted, actual);
    r.mean_absolute_error = abs_err / n;
    r.root_mean_squared_error = std::sqrt(sq_err / n);
    r.relative_absolute_error_pct = 100.0 * abs_err / base_abs;
    r.root_relative_squared_error_pct = 100.0 * std::sqrt(sq_err / base_sq);
    return r;
}

}  // namespace telemine
