#pragma once

#include <span>
#include <string>
#include <vector>

#include "telemine/numeric.hpp"

namespace telemine {

/// Common contract of every trained learner: an immutable map from one
/// predictor vector (in the training view's column order) to a real value.
class Regressor {
public:
    virtual ~Regressor() = default;

    virtual double predict(std::span<const double> x) const = 0;

    /// Human-readable dump of the fitted model.
    virtual std::string describe() const = 0;

    std::vector<double> predict_all(const Matrix& X) const {
        std::vector<double> out(X.rows());
        for (std::size_t r = 0; r < X.rows(); ++r) out[r] = predict(X.row(r));
        return out;
    }
};

}  // namespace telemine
