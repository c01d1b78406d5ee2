#pragma once

// Shared numerical machinery: a dense row-major matrix, linear models fit by
// least squares, the polynomial kernel, descriptive statistics and a seeded
// portable random stream.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace telemine {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double> column(std::size_t c) const;

    /// New matrix holding the given rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> rows) const;

    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Linear function intercept + Σ coefficients[j]·x[j] over a full predictor
/// vector. Attributes a model does not use carry a zero coefficient.
struct LinearModel {
    double intercept = 0.0;
    std::vector<double> coefficients;
    std::vector<std::string> predictor_names;

    double predict(std::span<const double> x) const;

    /// Number of attributes with a nonzero coefficient.
    std::size_t term_count() const;

    /// "w0 + w1*name1 + ..." with only nonzero terms.
    std::string to_string() const;

    static LinearModel constant(double value, std::size_t dims);
};

/// Ordinary least squares with an unpenalised intercept:
///   minimise Σ(y − Xw − w0)² + ridge·‖w‖².
/// Solved through column-pivoted QR of the centred, ridge-augmented design.
LinearModel fit_least_squares(const Matrix& X, std::span<const double> y, double ridge = 0.0);

/// Least squares restricted to a subset of rows and attributes. The returned
/// model spans all X.cols() attributes; unselected ones get zero weight.
LinearModel fit_least_squares(const Matrix& X, std::span<const double> y,
                              std::span<const std::size_t> rows,
                              std::span<const std::size_t> attributes, double ridge = 0.0);

struct KernelSpec {
    int exponent = 1;
    bool inhomogeneous = false;
};

/// ⟨x,y⟩^p, or (⟨x,y⟩+1)^p when inhomogeneous.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

double dot(std::span<const double> a, std::span<const double> b);

struct DescriptiveStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double stddev = 0.0;  // sample (n−1); 0 for a singleton
};

DescriptiveStats descriptive_stats(std::span<const double> v);

double mean(std::span<const double> v);

/// Per-column affine map of the training range [min, max] onto [0, 1].
/// Constant columns map to 0.
class MinMaxScaler {
public:
    MinMaxScaler() = default;
    explicit MinMaxScaler(const Matrix& X);

    std::size_t dims() const noexcept { return lo_.size(); }
    double lo(std::size_t c) const { return lo_[c]; }
    double hi(std::size_t c) const { return hi_[c]; }

    double scale(std::size_t c, double v, bool clamp = false) const;
    void transform(std::span<const double> in, std::span<double> out, bool clamp = false) const;
    Matrix transform(const Matrix& X, bool clamp = false) const;

private:
    std::vector<double> lo_, hi_;
};

/// Seeded pseudo-random stream built on the 64-bit Mersenne Twister, whose
/// output sequence is fixed by the C++ standard. Real and integer draws are
/// derived with explicit bit arithmetic rather than <random> distributions,
/// whose algorithms are implementation-defined, so sequences are identical
/// across standard libraries.
class RngStream {
public:
    static constexpr std::string_view algorithm = "mt19937_64";

    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), unbiased by rejection. n must be > 0.
    std::uint64_t below(std::uint64_t n);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Mixes a master seed with a label so that each consumer gets an
/// independent, stable stream (splitmix64 over seed ^ FNV-1a(label)).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

}  // namespace telemine
