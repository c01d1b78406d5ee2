#pragma once

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace testing {

using telemine::Matrix;
using telemine::TaskView;

inline TaskView make_view(Matrix X, std::vector<double> y) {
    TaskView t;
    for (std::size_t c = 0; c < X.cols(); ++c) t.predictor_names.push_back("x" + std::to_string(c));
    t.predictors = std::move(X);
    t.target = std::move(y);
    t.target_name = "y";
    return t;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, telemine::RngStream& rng, double lo = 0.0,
                            double hi = 1.0) {
    Matrix X(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) X(r, c) = rng.uniform(lo, hi);
    return X;
}

/// Values drawn from a small integer grid so that ties are common.
inline Matrix grid_matrix(std::size_t rows, std::size_t cols, telemine::RngStream& rng, int levels) {
    Matrix X(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) X(r, c) = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
    return X;
}

/// A telemonitoring-shaped table: every bounded column drawn inside its
/// reference range, total_UPDRS a noisy linear function of motor_UPDRS and
/// two voice features.
inline telemine::DataTable synthetic_table(std::size_t n, std::uint64_t seed) {
    const auto& schema = telemine::Schema::telemonitoring();
    telemine::RngStream rng(seed);
    Matrix v(n, schema.size());
    const auto col = [&](const char* name) { return *schema.find(name); };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < schema.size(); ++c) {
            const auto& spec = schema[c];
            if (spec.expected_min && spec.expected_max)
                v(r, c) = rng.uniform(*spec.expected_min, *spec.expected_max);
            else
                v(r, c) = rng.uniform(0.0, 1.0);
        }
        v(r, col("subject#")) = static_cast<double>(1 + rng.below(42));
        v(r, col("age")) = static_cast<double>(36 + rng.below(50));
        v(r, col("sex")) = static_cast<double>(rng.below(2));
        v(r, col("test_time")) = rng.uniform(0.0, 215.0);
        const double motor = rng.uniform(6.0, 39.0);
        v(r, col("motor_UPDRS")) = motor;
        v(r, col("total_UPDRS")) = std::clamp(1.25 * motor + 4.0 * v(r, col("DFA")) + 8.0 * v(r, col("RPDE")) +
                                                  rng.uniform(-1.5, 1.5),
                                              7.5, 54.5);
        v(r, col("Shimmer:DDA")) = 3.0 * v(r, col("Shimmer:APQ3"));
    }
    return telemine::DataTable(schema, std::move(v));
}

}  // namespace testing
