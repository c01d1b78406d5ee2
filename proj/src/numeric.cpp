#include "telemine/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace telemine {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw DimensionError("Matrix::from_rows: ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
    Matrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto src = row(rows[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

double LinearModel::predict(std::span<const double> x) const {
    if (x.size() != coefficients.size())
        throw DimensionError("LinearModel::predict: expected " + std::to_string(coefficients.size()) +
                             " values, got " + std::to_string(x.size()));
    double acc = intercept;
    for (std::size_t j = 0; j < x.size(); ++j) acc += coefficients[j] * x[j];
    return acc;
}

std::size_t LinearModel::term_count() const {
    return static_cast<std::size_t>(
        std::count_if(coefficients.begin(), coefficients.end(), [](double w) { return w != 0.0; }));
}

std::string LinearModel::to_string() const {
    std::ostringstream os;
    os.precision(6);
    os << intercept;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        double w = coefficients[j];
        if (w == 0.0) continue;
        os << (w < 0 ? " - " : " + ") << std::abs(w) << '*';
        if (j < predictor_names.size())
            os << predictor_names[j];
        else
            os << 'x' << j;
    }
    return os.str();
}

LinearModel LinearModel::constant(double value, std::size_t dims) {
    LinearModel m;
    m.intercept = value;
    m.coefficients.assign(dims, 0.0);
    return m;
}

LinearModel fit_least_squares(const Matrix& X, std::span<const double> y, double ridge) {
    std::vector<std::size_t> rows(X.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::vector<std::size_t> attrs(X.cols());
    std::iota(attrs.begin(), attrs.end(), std::size_t{0});
    return fit_least_squares(X, y, rows, attrs, ridge);
}

LinearModel fit_least_squares(const Matrix& X, std::span<const double> y,
                              std::span<const std::size_t> rows,
                              std::span<const std::size_t> attributes, double ridge) {
    if (X.rows() != y.size())
        throw DimensionError("fit_least_squares: X has " + std::to_string(X.rows()) + " rows but y has " +
                             std::to_string(y.size()) + " values");
    if (rows.empty()) throw DimensionError("fit_least_squares: no rows");
    if (ridge < 0.0) throw std::invalid_argument("fit_least_squares: negative ridge");
    for (auto a : attributes)
        if (a >= X.cols()) throw DimensionError("fit_least_squares: attribute index out of range");

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto k = static_cast<Eigen::Index>(attributes.size());

    double y_mean = 0.0;
    for (auto r : rows) y_mean += y[r];
    y_mean /= static_cast<double>(n);

    LinearModel model = LinearModel::constant(y_mean, X.cols());
    if (k == 0 || n < 2) return model;

    Eigen::VectorXd x_mean = Eigen::VectorXd::Zero(k);
    for (auto r : rows)
        for (Eigen::Index j = 0; j < k; ++j) x_mean[j] += X(r, attributes[j]);
    x_mean /= static_cast<double>(n);

    const Eigen::Index extra = ridge > 0.0 ? k : 0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + extra, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + extra);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto r = rows[i];
        for (Eigen::Index j = 0; j < k; ++j) A(i, j) = X(r, attributes[j]) - x_mean[j];
        b[i] = y[r] - y_mean;
    }
    if (extra > 0) {
        const double s = std::sqrt(ridge);
        for (Eigen::Index j = 0; j < k; ++j) A(n + j, j) = s;
    }

    Eigen::VectorXd w = A.colPivHouseholderQr().solve(b);
    double intercept = y_mean;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!std::isfinite(w[j])) w[j] = 0.0;
        model.coefficients[attributes[j]] = w[j];
        intercept -= w[j] * x_mean[j];
    }
    model.intercept = intercept;
    return model;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionError("dot: length mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (spec.exponent < 1) throw std::invalid_argument("kernel_eval: exponent must be positive");
    double base = dot(x, y);
    if (spec.inhomogeneous) base += 1.0;
    if (spec.exponent == 1) return base;
    double out = base;
    for (int i = 1; i < spec.exponent; ++i) out *= base;
    return out;
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean: empty vector");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

DescriptiveStats descriptive_stats(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("descriptive_stats: empty vector");
    DescriptiveStats s;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    s.min = *lo;
    s.max = *hi;
    s.mean = mean(v);
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

MinMaxScaler::MinMaxScaler(const Matrix& X) {
    if (X.rows() == 0) throw std::invalid_argument("MinMaxScaler: no rows");
    lo_.assign(X.cols(), 0.0);
    hi_.assign(X.cols(), 0.0);
    for (std::size_t c = 0; c < X.cols(); ++c) {
        lo_[c] = hi_[c] = X(0, c);
        for (std::size_t r = 1; r < X.rows(); ++r) {
            lo_[c] = std::min(lo_[c], X(r, c));
            hi_[c] = std::max(hi_[c], X(r, c));
        }
    }
}

double MinMaxScaler::scale(std::size_t c, double v, bool clamp) const {
    const double range = hi_[c] - lo_[c];
    if (range <= 0.0) return 0.0;
    double s = (v - lo_[c]) / range;
    if (clamp) s = std::clamp(s, 0.0, 1.0);
    return s;
}

void MinMaxScaler::transform(std::span<const double> in, std::span<double> out, bool clamp) const {
    if (in.size() != dims() || out.size() != dims()) throw DimensionError("MinMaxScaler: dimension mismatch");
    for (std::size_t c = 0; c < in.size(); ++c) out[c] = scale(c, in[c], clamp);
}

Matrix MinMaxScaler::transform(const Matrix& X, bool clamp) const {
    Matrix out(X.rows(), X.cols());
    for (std::size_t r = 0; r < X.rows(); ++r) transform(X.row(r), out.row(r), clamp);
    return out;
}

std::uint64_t RngStream::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::below: n must be positive");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = master ^ h;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace telemine
