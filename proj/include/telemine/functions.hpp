#pragma once

// Function-fitting learners: simple linear regression on the single best
// predictor, a one-hidden-layer perceptron trained by backpropagation with
// momentum, and epsilon-insensitive support vector regression solved by
// sequential minimal optimization.

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"
#include "telemine/regressor.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace telemine {

class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Simple linear regression

class SlrModel final : public Regressor {
public:
    SlrModel(std::size_t attribute, std::string name, double intercept, double slope, double training_sse)
        : attribute_(attribute), name_(std::move(name)), intercept_(intercept), slope_(slope), sse_(training_sse) {}

    double predict(std::span<const double> x) const override { return intercept_ + slope_ * x[attribute_]; }
    std::string describe() const override;

    std::size_t attribute() const noexcept { return attribute_; }
    const std::string& attribute_name() const noexcept { return name_; }
    double intercept() const noexcept { return intercept_; }
    double slope() const noexcept { return slope_; }
    double training_sse() const noexcept { return sse_; }

private:
    std::size_t attribute_;
    std::string name_;
    double intercept_;
    double slope_;
    double sse_;
};

/// Fits y = α + βx for every non-constant predictor and keeps the one with
/// the smallest training SSE (ties: lowest column index).
SlrModel train_slr(const TaskView& train);

// ---------------------------------------------------------------------------
// Multi-layer perceptron: inputs -> sigmoid hidden layer -> linear output.

class MlpNetwork {
public:
    MlpNetwork() = default;
    MlpNetwork(std::size_t inputs, std::size_t hidden);

    static MlpNetwork random(std::size_t inputs, std::size_t hidden, RngStream& rng, double range);

    std::size_t inputs() const noexcept { return inputs_; }
    std::size_t hidden() const noexcept { return hidden_; }

    double forward(std::span<const double> x) const;

    /// 0.5 · Σ (forward(x_i) − y_i)².
    double loss(const Matrix& X, std::span<const double> y) const;

    /// Gradient of loss() with respect to parameters(), by backpropagation.
    std::vector<double> gradient(const Matrix& X, std::span<const double> y) const;

    /// Adds the gradient of 0.5·(forward(x) − y)² to `grad`.
    void accumulate_gradient(std::span<const double> x, double y, std::span<double> grad) const;

    /// Flat parameter vector: hidden weights (row per hidden unit), hidden
    /// biases, output weights, output bias.
    std::span<double> parameters() noexcept { return params_; }
    std::span<const double> parameters() const noexcept { return params_; }

    std::span<const double> hidden_weights(std::size_t unit) const {
        return {params_.data() + unit * inputs_, inputs_};
    }
    double hidden_bias(std::size_t unit) const { return params_[hidden_ * inputs_ + unit]; }
    double output_weight(std::size_t unit) const { return params_[hidden_ * inputs_ + hidden_ + unit]; }
    double output_bias() const { return params_.back(); }

private:
    std::size_t inputs_ = 0;
    std::size_t hidden_ = 0;
    std::vector<double> params_;
};

struct MlpParams {
    std::size_t hidden = 13;
    std::size_t epochs = 500;
    double learning_rate = 0.3;
    double momentum = 0.2;
    double init_range = 0.05;  // weights start uniform in [−range, range]
};

class MlpModel final : public Regressor {
public:
    MlpModel(MlpNetwork net, MinMaxScaler inputs, double target_lo, double target_hi)
        : net_(std::move(net)), inputs_(std::move(inputs)), target_lo_(target_lo), target_hi_(target_hi) {}

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    const MlpNetwork& network() const noexcept { return net_; }

private:
    MlpNetwork net_;
    MinMaxScaler inputs_;
    double target_lo_;
    double target_hi_;
};

/// Online gradient descent with momentum on squared error. Inputs and target
/// are mapped to [−1, 1] by the training range. Throws TrainingError naming
/// the epoch if the loss becomes non-finite.
MlpModel train_mlp(const TaskView& train, const MlpParams& params, RngStream& rng);

// ---------------------------------------------------------------------------
// Support vector regression

struct SmoregParams {
    KernelSpec kernel{};
    double C = 1.0;
    double epsilon = 1e-3;
    double tolerance = 1e-3;
    std::size_t max_updates = 1'000'000;
    bool scale_target = false;
    std::size_t objective_every = 1000;  // dual objective sampling period
    std::size_t cache_megabytes = 256;
};

class ConvergenceError : public TrainingError {
public:
    ConvergenceError(const std::string& what, double violation) : TrainingError(what), violation_(violation) {}
    double max_violation() const noexcept { return violation_; }

private:
    double violation_;
};

struct SmoDiagnostics {
    std::size_t updates = 0;
    double final_gap = 0.0;  // max KKT violation of the solver at exit
    std::vector<double> objective_trace;  // dual objective, sampled
};

class SvrModel final : public Regressor {
public:
    SvrModel(MinMaxScaler scaler, Matrix normalized_train, std::vector<double> dual, double bias,
             const SmoregParams& params, double target_offset, double target_scale, SmoDiagnostics diag);

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    /// Prediction on an already-normalized vector, in the solver's target
    /// units (before undoing any target scaling).
    double decision(std::span<const double> normalized) const;

    /// αᵢ − αᵢ* for every training instance.
    const std::vector<double>& dual_coefficients() const noexcept { return dual_; }
    double bias() const noexcept { return bias_; }
    const Matrix& normalized_train() const noexcept { return train_; }
    const MinMaxScaler& scaler() const noexcept { return scaler_; }
    const SmoregParams& params() const noexcept { return params_; }
    const SmoDiagnostics& diagnostics() const noexcept { return diag_; }
    std::size_t support_vector_count() const;

    /// Maps a raw target into the solver's units.
    double to_solver_units(double y) const { return (y - target_offset_) / target_scale_; }

private:
    MinMaxScaler scaler_;
    Matrix train_;
    std::vector<double> dual_;
    double bias_;
    SmoregParams params_;
    double target_offset_;
    double target_scale_;
    SmoDiagnostics diag_;
    std::vector<std::size_t> support_;
};

/// Solves the ε-insensitive SVR dual on min–max normalized predictors.
/// Throws ConvergenceError when max_updates pair updates do not reach the
/// tolerance.
SvrModel train_smoreg(const TaskView& train, const SmoregParams& params = {});

/// Largest violation of the SVR optimality conditions by the model on its own
/// training data, computed directly from residuals and dual coefficients.
double max_kkt_violation(const SvrModel& model, std::span<const double> train_target);

}  // namespace telemine
