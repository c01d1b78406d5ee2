#pragma once

// Lazy learners over a min–max normalized instance store: 1-nearest-neighbour
// (IBk) and locally weighted learning with a linear kernel over all training
// points and a weighted decision stump fit per query (LWL).

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"
#include "telemine/regressor.hpp"
#include "telemine/trees.hpp"

#include <span>
#include <string>
#include <vector>

namespace telemine {

/// −√Σ(xᵢ − yᵢ)². Throws DimensionError on length mismatch.
double similarity(std::span<const double> x, std::span<const double> y);

class InstanceStore {
public:
    InstanceStore() = default;
    explicit InstanceStore(const TaskView& train);

    std::size_t size() const noexcept { return targets_.size(); }
    std::size_t dims() const noexcept { return normalized_.cols(); }

    const Matrix& normalized() const noexcept { return normalized_; }
    const std::vector<double>& targets() const noexcept { return targets_; }
    const MinMaxScaler& scaler() const noexcept { return scaler_; }

    /// Query mapped with the training ranges and clamped to [0, 1].
    std::vector<double> normalize(std::span<const double> raw) const;

    /// Euclidean distance from a normalized query to every stored row.
    std::vector<double> distances(std::span<const double> normalized_query) const;

private:
    MinMaxScaler scaler_;
    Matrix normalized_;
    std::vector<double> targets_;
};

class IbkModel final : public Regressor {
public:
    explicit IbkModel(InstanceStore store) : store_(std::move(store)) {}

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    /// Row index of the most similar stored instance; ties keep the lowest.
    std::size_t nearest(std::span<const double> x) const;

    const InstanceStore& store() const noexcept { return store_; }

private:
    InstanceStore store_;
};

IbkModel train_ibk(const TaskView& train);

/// wᵢ = max(0, 1 − dᵢ/d_max); all ones when d_max is 0.
std::vector<double> lwl_weights(std::span<const double> distances);

class LwlModel final : public Regressor {
public:
    explicit LwlModel(InstanceStore store);

    /// Fits a stump weighted by lwl_weights of the query's distances and
    /// evaluates it at the query. When every weight is zero (all points
    /// equidistant) the stump is fit unweighted.
    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    /// The stump fitted for one query.
    StumpFit local_model(std::span<const double> x) const;

    const InstanceStore& store() const noexcept { return store_; }

private:
    InstanceStore store_;
    std::vector<std::vector<std::size_t>> sorted_;
};

LwlModel train_lwl(const TaskView& train);

}  // namespace telemine
