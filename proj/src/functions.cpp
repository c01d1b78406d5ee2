#include "telemine/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace telemine {

// ---------------------------------------------------------------------------
// SLR

std::string SlrModel::describe() const {
    std::ostringstream os;
    os.precision(8);
    os << "Linear regression on " << name_ << "\n  " << slope_ << " * " << name_ << (intercept_ < 0 ? " - " : " + ")
       << std::abs(intercept_) << '\n';
    return os.str();
}

SlrModel train_slr(const TaskView& train) {
    const std::size_t n = train.size();
    if (n < 2) throw TrainingError("SLR: at least two training rows are required");
    const double y_mean = mean(train.target);
    double sst = 0.0;
    for (double v : train.target) sst += (v - y_mean) * (v - y_mean);

    bool found = false;
    std::size_t best_attr = 0;
    double best_sse = 0.0, best_a = 0.0, best_b = 0.0;
    for (std::size_t j = 0; j < train.dims(); ++j) {
        double x_mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) x_mean += train.predictors(r, j);
        x_mean /= static_cast<double>(n);
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dx = train.predictors(r, j) - x_mean;
            sxx += dx * dx;
            sxy += dx * (train.target[r] - y_mean);
        }
        if (sxx <= 0.0) continue;
        const double slope = sxy / sxx;
        const double intercept = y_mean - slope * x_mean;
        double sse = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double e = train.target[r] - (intercept + slope * train.predictors(r, j));
            sse += e * e;
        }
        // Ties within rounding keep the lower column.
        if (!found || sse < best_sse - 1e-12 * sst) {
            found = true;
            best_attr = j;
            best_sse = sse;
            best_a = intercept;
            best_b = slope;
        }
    }
    if (!found) throw TrainingError("SLR: every predictor is constant");
    return SlrModel(best_attr, train.predictor_names[best_attr], best_a, best_b, best_sse);
}

// ---------------------------------------------------------------------------
// MLP

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double to_unit_interval(double v, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

}  // namespace

MlpNetwork::MlpNetwork(std::size_t inputs, std::size_t hidden)
    : inputs_(inputs), hidden_(hidden), params_(hidden * inputs + hidden + hidden + 1, 0.0) {}

MlpNetwork MlpNetwork::random(std::size_t inputs, std::size_t hidden, RngStream& rng, double range) {
    MlpNetwork net(inputs, hidden);
    for (auto& w : net.params_) w = rng.uniform(-range, range);
    return net;
}

double MlpNetwork::forward(std::span<const double> x) const {
    if (x.size() != inputs_) throw DimensionError("MlpNetwork::forward: input size mismatch");
    const double* w = params_.data();
    const double* hb = w + hidden_ * inputs_;
    const double* ow = hb + hidden_;
    double out = params_.back();
    for (std::size_t h = 0; h < hidden_; ++h) {
        double z = hb[h];
        const double* wh = w + h * inputs_;
        for (std::size_t i = 0; i < inputs_; ++i) z += wh[i] * x[i];
        out += ow[h] * sigmoid(z);
    }
    return out;
}

double MlpNetwork::loss(const Matrix& X, std::span<const double> y) const {
    double acc = 0.0;
    for (std::size_t r = 0; r < X.rows(); ++r) {
        const double e = forward(X.row(r)) - y[r];
        acc += 0.5 * e * e;
    }
    return acc;
}

void MlpNetwork::accumulate_gradient(std::span<const double> x, double y, std::span<double> grad) const {
    const double* w = params_.data();
    const double* hb = w + hidden_ * inputs_;
    const double* ow = hb + hidden_;
    std::vector<double> act(hidden_);
    double out = params_.back();
    for (std::size_t h = 0; h < hidden_; ++h) {
        double z = hb[h];
        const double* wh = w + h * inputs_;
        for (std::size_t i = 0; i < inputs_; ++i) z += wh[i] * x[i];
        act[h] = sigmoid(z);
        out += ow[h] * act[h];
    }
    const double delta_out = out - y;
    double* g = grad.data();
    double* g_hb = g + hidden_ * inputs_;
    double* g_ow = g_hb + hidden_;
    for (std::size_t h = 0; h < hidden_; ++h) {
        g_ow[h] += delta_out * act[h];
        const double delta_h = delta_out * ow[h] * act[h] * (1.0 - act[h]);
        g_hb[h] += delta_h;
        double* gh = g + h * inputs_;
        for (std::size_t i = 0; i < inputs_; ++i) gh[i] += delta_h * x[i];
    }
    grad.back() += delta_out;
}

std::vector<double> MlpNetwork::gradient(const Matrix& X, std::span<const double> y) const {
    std::vector<double> grad(params_.size(), 0.0);
    for (std::size_t r = 0; r < X.rows(); ++r) accumulate_gradient(X.row(r), y[r], grad);
    return grad;
}

double MlpModel::predict(std::span<const double> x) const {
    std::vector<double> z(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) z[c] = to_unit_interval(x[c], inputs_.lo(c), inputs_.hi(c));
    const double out = net_.forward(z);
    if (target_hi_ <= target_lo_) return target_lo_ + out;
    return target_lo_ + (out + 1.0) * 0.5 * (target_hi_ - target_lo_);
}

std::string MlpModel::describe() const {
    std::ostringstream os;
    os << "Multi-layer perceptron " << net_.inputs() << "-" << net_.hidden() << "-1 (sigmoid hidden, linear output)\n";
    os.precision(6);
    for (std::size_t h = 0; h < net_.hidden(); ++h) {
        os << "  hidden " << h << ": bias " << net_.hidden_bias(h) << ", out weight " << net_.output_weight(h) << '\n';
    }
    os << "  output bias " << net_.output_bias() << '\n';
    return os.str();
}

MlpModel train_mlp(const TaskView& train, const MlpParams& params, RngStream& rng) {
    if (train.size() == 0) throw TrainingError("MLP: empty training set");
    if (params.epochs < 1) throw TrainingError("MLP: epochs must be at least 1");
    if (params.hidden < 1) throw TrainingError("MLP: hidden layer must have at least one unit");

    const std::size_t n = train.size(), d = train.dims();
    MinMaxScaler scaler(train.predictors);
    Matrix X(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c)
            X(r, c) = to_unit_interval(train.predictors(r, c), scaler.lo(c), scaler.hi(c));
    auto [t_lo_it, t_hi_it] = std::minmax_element(train.target.begin(), train.target.end());
    const double t_lo = *t_lo_it, t_hi = *t_hi_it;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = t_hi > t_lo ? to_unit_interval(train.target[r], t_lo, t_hi) : 0.0;

    MlpNetwork net = MlpNetwork::random(d, params.hidden, rng, params.init_range);
    auto w = net.parameters();
    std::vector<double> grad(w.size()), previous(w.size(), 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 1; epoch <= params.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double epoch_loss = 0.0;
        for (auto r : order) {
            std::fill(grad.begin(), grad.end(), 0.0);
            net.accumulate_gradient(X.row(r), y[r], grad);
            // accumulate_gradient adds delta_out to the bias slot; recover the
            // residual for the loss without a second forward pass.
            const double e = grad.back();
            epoch_loss += 0.5 * e * e;
            for (std::size_t k = 0; k < w.size(); ++k) {
                const double step = -params.learning_rate * grad[k] + params.momentum * previous[k];
                w[k] += step;
                previous[k] = step;
            }
        }
        if (!std::isfinite(epoch_loss))
            throw TrainingError("MLP: training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
    }
    return MlpModel(std::move(net), std::move(scaler), t_lo, t_hi);
}

// ---------------------------------------------------------------------------
// SMOreg

namespace {

// Kernel rows of the training set with an LRU cache bounded in bytes.
class KernelCache {
public:
    KernelCache(const Matrix& X, const KernelSpec& spec, std::size_t megabytes)
        : X_(X), spec_(spec), diag_(X.rows()) {
        const std::size_t row_bytes = std::max<std::size_t>(1, X.rows() * sizeof(double));
        capacity_ = std::max<std::size_t>(2, megabytes * 1024 * 1024 / row_bytes);
        for (std::size_t i = 0; i < X.rows(); ++i) diag_[i] = kernel_eval(spec_, X.row(i), X.row(i));
    }

    double diagonal(std::size_t i) const { return diag_[i]; }

    const std::vector<double>& row(std::size_t i) {
        auto it = index_.find(i);
        if (it != index_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second);
            return it->second->second;
        }
        if (lru_.size() >= capacity_) {
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
        std::vector<double> values(X_.rows());
        for (std::size_t j = 0; j < X_.rows(); ++j) values[j] = kernel_eval(spec_, X_.row(i), X_.row(j));
        lru_.emplace_front(i, std::move(values));
        index_[i] = lru_.begin();
        return lru_.front().second;
    }

private:
    using Entry = std::pair<std::size_t, std::vector<double>>;
    const Matrix& X_;
    KernelSpec spec_;
    std::vector<double> diag_;
    std::size_t capacity_;
    std::list<Entry> lru_;
    std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

struct SmoResult {
    std::vector<double> dual;
    double bias = 0.0;
    SmoDiagnostics diag;
};

// Pairwise SMO on the 2n-variable form of the ε-SVR dual
//   min ½ αᵀQα + pᵀα,  Σ s_t α_t = 0,  0 ≤ α_t ≤ C,
// where t < n carries αᵢ (s = +1, p = ε − yᵢ) and t ≥ n carries αᵢ*
// (s = −1, p = ε + yᵢ), Q_ts = s_t s_s K(x_t, x_s). Working pairs are the
// maximal violating pair refined by second-order gain.
SmoResult solve_svr(const Matrix& X, std::span<const double> y, const SmoregParams& params) {
    const std::size_t n = X.rows();
    const std::size_t l = 2 * n;
    const double C = params.C;
    constexpr double tau = 1e-12;

    KernelCache cache(X, params.kernel, params.cache_megabytes);
    std::vector<double> alpha(l, 0.0), p(l), G(l);
    std::vector<signed char> sign(l);
    for (std::size_t i = 0; i < n; ++i) {
        sign[i] = 1;
        sign[i + n] = -1;
        p[i] = params.epsilon - y[i];
        p[i + n] = params.epsilon + y[i];
    }
    G = p;

    auto at_upper = [&](std::size_t t) { return alpha[t] >= C; };
    auto at_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };
    auto objective = [&] {
        double f = 0.0;
        for (std::size_t t = 0; t < l; ++t) f += alpha[t] * (G[t] + p[t]);
        return -0.5 * f;
    };

    SmoResult result;
    double gap = 0.0;
    std::size_t updates = 0;
    while (true) {
        // i: maximal −s·G over the "up" set.
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = l;
        for (std::size_t t = 0; t < l; ++t) {
            const bool up = sign[t] > 0 ? !at_upper(t) : !at_lower(t);
            if (up && -sign[t] * G[t] > gmax) {
                gmax = -sign[t] * G[t];
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t j = l;
        double best_obj = std::numeric_limits<double>::infinity();
        const std::vector<double>* Ki = i < l ? &cache.row(i % n) : nullptr;
        for (std::size_t t = 0; t < l; ++t) {
            const bool low = sign[t] > 0 ? !at_lower(t) : !at_upper(t);
            if (!low) continue;
            const double sg = sign[t] * G[t];
            gmax2 = std::max(gmax2, sg);
            if (!Ki) continue;
            const double b = gmax + sg;
            if (b > 0.0) {
                const double kit = (*Ki)[t % n];
                // Q_ii + Q_tt − 2 s_i s_t Q_it = K_ii + K_tt − 2 K_it
                double a = cache.diagonal(i % n) + cache.diagonal(t % n) - 2.0 * kit;
                if (a <= 0.0) a = tau;
                const double obj = -(b * b) / a;
                if (obj < best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        gap = gmax + gmax2;
        if (i == l || j == l || gap < params.tolerance) break;
        if (updates >= params.max_updates) {
            throw ConvergenceError("SMOreg: no convergence after " + std::to_string(updates) +
                                       " pair updates (max KKT violation " + std::to_string(gap) + ")",
                                   gap);
        }

        const std::vector<double>& KI = cache.row(i % n);
        const std::vector<double>& KJ = cache.row(j % n);
        const double kij = KI[j % n];
        const double Qij = sign[i] * sign[j] * kij;
        const double Qii = cache.diagonal(i % n), Qjj = cache.diagonal(j % n);
        const double old_ai = alpha[i], old_aj = alpha[j];

        if (sign[i] != sign[j]) {
            double quad = Qii + Qjj + 2.0 * Qij;
            if (quad <= 0.0) quad = tau;
            const double delta = (-G[i] - G[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) {
                    alpha[j] = 0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = -diff;
            }
            if (diff > 0) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = C - diff;
                }
            } else if (alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = C + diff;
            }
        } else {
            double quad = Qii + Qjj - 2.0 * Qij;
            if (quad <= 0.0) quad = tau;
            const double delta = (G[i] - G[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = sum - C;
                }
            } else if (alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = sum;
            }
            if (sum > C) {
                if (alpha[j] > C) {
                    alpha[j] = C;
                    alpha[i] = sum - C;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = sum;
            }
        }

        const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < l; ++t) {
            const double qti = sign[t] * sign[i] * KI[t % n];
            const double qtj = sign[t] * sign[j] * KJ[t % n];
            G[t] += qti * dai + qtj * daj;
        }
        ++updates;
        if (params.objective_every > 0 && updates % params.objective_every == 0)
            result.diag.objective_trace.push_back(objective());
    }
    result.diag.objective_trace.push_back(objective());

    // Offset from the free variables; midpoint of the feasible interval when
    // every variable sits at a bound.
    double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < l; ++t) {
        const double sg = sign[t] * G[t];
        if (at_upper(t)) {
            if (sign[t] < 0)
                ub = std::min(ub, sg);
            else
                lb = std::max(lb, sg);
        } else if (at_lower(t)) {
            if (sign[t] > 0)
                ub = std::min(ub, sg);
            else
                lb = std::max(lb, sg);
        } else {
            ++n_free;
            sum_free += sg;
        }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);

    result.dual.resize(n);
    for (std::size_t i2 = 0; i2 < n; ++i2) result.dual[i2] = alpha[i2] - alpha[i2 + n];
    result.bias = -rho;
    result.diag.updates = updates;
    result.diag.final_gap = std::max(gap, 0.0);
    return result;
}

}  // namespace

SvrModel::SvrModel(MinMaxScaler scaler, Matrix normalized_train, std::vector<double> dual, double bias,
                   const SmoregParams& params, double target_offset, double target_scale, SmoDiagnostics diag)
    : scaler_(std::move(scaler)),
      train_(std::move(normalized_train)),
      dual_(std::move(dual)),
      bias_(bias),
      params_(params),
      target_offset_(target_offset),
      target_scale_(target_scale),
      diag_(std::move(diag)) {
    for (std::size_t i = 0; i < dual_.size(); ++i)
        if (dual_[i] != 0.0) support_.push_back(i);
}

std::size_t SvrModel::support_vector_count() const { return support_.size(); }

double SvrModel::decision(std::span<const double> z) const {
    double f = bias_;
    for (auto i : support_) f += dual_[i] * kernel_eval(params_.kernel, train_.row(i), z);
    return f;
}

double SvrModel::predict(std::span<const double> x) const {
    std::vector<double> z(x.size());
    scaler_.transform(x, z);
    return target_offset_ + target_scale_ * decision(z);
}

std::string SvrModel::describe() const {
    std::ostringstream os;
    os << "SVR by SMO: kernel " << (params_.kernel.inhomogeneous ? "(<x,y>+1)^" : "<x,y>^") << params_.kernel.exponent
       << ", C " << params_.C << ", epsilon " << params_.epsilon << '\n'
       << "  support vectors " << support_.size() << " of " << dual_.size() << ", bias " << bias_ << '\n'
       << "  pair updates " << diag_.updates << ", final KKT gap " << diag_.final_gap << '\n';
    return os.str();
}

SvrModel train_smoreg(const TaskView& train, const SmoregParams& params) {
    if (train.size() == 0) throw TrainingError("SMOreg: empty training set");
    if (!(params.C > 0.0)) throw TrainingError("SMOreg: C must be positive");
    if (params.epsilon < 0.0) throw TrainingError("SMOreg: epsilon must be non-negative");
    if (!(params.tolerance > 0.0)) throw TrainingError("SMOreg: tolerance must be positive");

    MinMaxScaler scaler(train.predictors);
    Matrix Z = scaler.transform(train.predictors);

    double offset = 0.0, scale = 1.0;
    if (params.scale_target) {
        auto [lo, hi] = std::minmax_element(train.target.begin(), train.target.end());
        offset = *lo;
        scale = *hi > *lo ? *hi - *lo : 1.0;
    }
    std::vector<double> y(train.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (train.target[i] - offset) / scale;

    auto solved = solve_svr(Z, y, params);
    return SvrModel(std::move(scaler), std::move(Z), std::move(solved.dual), solved.bias, params, offset, scale,
                    std::move(solved.diag));
}

double max_kkt_violation(const SvrModel& model, std::span<const double> train_target) {
    const auto& dual = model.dual_coefficients();
    const double C = model.params().C, eps = model.params().epsilon;
    const double bound_tol = 1e-12 * std::max(1.0, C);
    double worst = 0.0;
    for (std::size_t i = 0; i < dual.size(); ++i) {
        const double r = model.to_solver_units(train_target[i]) - model.decision(model.normalized_train().row(i));
        const double beta = dual[i];
        double v;
        if (std::abs(beta) <= bound_tol)
            v = std::max(0.0, std::abs(r) - eps);
        else if (beta >= C - bound_tol)
            v = std::max(0.0, eps - r);
        else if (beta <= -C + bound_tol)
            v = std::max(0.0, r + eps);
        else if (beta > 0)
            v = std::abs(r - eps);
        else
            v = std::abs(r + eps);
        if (std::abs(beta) > C + bound_tol) v = std::numeric_limits<double>::infinity();
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace telemine
