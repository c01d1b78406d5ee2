#include "telemine/lazy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace telemine {

double similarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DimensionError("similarity: length mismatch (" + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - y[i]) * (x[i] - y[i]);
    return -std::sqrt(ss);
}

InstanceStore::InstanceStore(const TaskView& train)
    : scaler_(train.predictors), normalized_(scaler_.transform(train.predictors, true)), targets_(train.target) {
    if (targets_.empty()) throw std::invalid_argument("instance store: empty training set");
}

std::vector<double> InstanceStore::normalize(std::span<const double> raw) const {
    if (raw.size() != dims())
        throw DimensionError("instance store: expected " + std::to_string(dims()) + " values, got " +
                             std::to_string(raw.size()));
    std::vector<double> out(raw.size());
    scaler_.transform(raw, out, true);
    return out;
}

std::vector<double> InstanceStore::distances(std::span<const double> q) const {
    std::vector<double> d(size());
    for (std::size_t r = 0; r < size(); ++r) d[r] = -similarity(normalized_.row(r), q);
    return d;
}

std::size_t IbkModel::nearest(std::span<const double> x) const {
    const auto q = store_.normalize(x);
    std::size_t best = 0;
    double best_sim = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < store_.size(); ++r) {
        const double s = similarity(store_.normalized().row(r), q);
        if (s > best_sim) {
            best_sim = s;
            best = r;
        }
    }
    return best;
}

double IbkModel::predict(std::span<const double> x) const { return store_.targets()[nearest(x)]; }

std::string IbkModel::describe() const {
    return "IBk: 1-nearest neighbour over " + std::to_string(store_.size()) + " stored instances\n";
}

IbkModel train_ibk(const TaskView& train) { return IbkModel(InstanceStore(train)); }

std::vector<double> lwl_weights(std::span<const double> distances) {
    double dmax = 0.0;
    for (double d : distances) dmax = std::max(dmax, d);
    std::vector<double> w(distances.size(), 1.0);
    if (dmax > 0.0)
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, 1.0 - distances[i] / dmax);
    return w;
}

LwlModel::LwlModel(InstanceStore store)
    : store_(std::move(store)), sorted_(presort_columns(store_.normalized())) {}

StumpFit LwlModel::local_model(std::span<const double> x) const {
    const auto q = store_.normalize(x);
    const auto w = lwl_weights(store_.distances(q));
    double total = 0.0;
    for (double v : w) total += v;
    // Every point at the same positive distance: the kernel is flat, so the
    // local model is the unweighted one.
    if (!(total > 0.0)) return fit_weighted_stump(store_.normalized(), store_.targets(), {}, sorted_);
    return fit_weighted_stump(store_.normalized(), store_.targets(), w, sorted_);
}

double LwlModel::predict(std::span<const double> x) const {
    const auto q = store_.normalize(x);
    return local_model(x).predict(q);
}

std::string LwlModel::describe() const {
    return "LWL: linear kernel over all " + std::to_string(store_.size()) +
           " instances, weighted decision stump per query\n";
}

LwlModel train_lwl(const TaskView& train) { return LwlModel(InstanceStore(train)); }

}  // namespace telemine
