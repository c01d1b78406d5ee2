#include "telemine/meta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace telemine {

TargetDiscretizer::TargetDiscretizer(std::span<const double> y, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("target discretizer: need at least 2 bins");
    if (y.empty()) throw std::invalid_argument("target discretizer: empty target");
    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw std::invalid_argument("target discretizer: target is constant");
    const double width = (hi - lo) / static_cast<double>(bins);
    edges_.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) edges_[b] = lo + width * static_cast<double>(b);
    edges_.back() = hi;

    std::vector<double> sum(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    for (double v : y) {
        const auto b = bin(v);
        sum[b] += v;
        ++count[b];
    }
    representatives_.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        representatives_[b] = count[b] ? sum[b] / static_cast<double>(count[b]) : midpoint(b);
}

std::size_t TargetDiscretizer::bin(double v) const {
    const std::size_t k = bins();
    // First edge strictly above v, so interior edges open the upper bin.
    auto it = std::upper_bound(edges_.begin() + 1, edges_.end() - 1, v);
    return std::min(k - 1, static_cast<std::size_t>(it - (edges_.begin() + 1)));
}

double entropy_bits(std::span<const double> counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    if (!(total > 0.0)) return 0.0;
    double h = 0.0;
    for (double c : counts)
        if (c > 0.0) h -= (c / total) * std::log2(c / total);
    return h;
}

namespace {

double normal_inverse(double p) {
    // Newton iterations on Φ(z) = p from a logistic starting point.
    double z = std::log(p / (1.0 - p)) / 1.702;
    for (int i = 0; i < 50; ++i) {
        const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
        const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
        const double step = (cdf - p) / pdf;
        z -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return z;
}

}  // namespace

double c45_added_errors(double N, double e, double cf) {
    if (!(cf > 0.0 && cf <= 0.5)) throw std::invalid_argument("confidence factor must lie in (0, 0.5]");
    if (e < 1.0) {
        const double base = N * (1.0 - std::pow(cf, 1.0 / N));
        if (e == 0.0) return base;
        return base + e * (c45_added_errors(N, 1.0, cf) - base);
    }
    if (e + 0.5 >= N) return std::max(N - e, 0.0);
    const double z = normal_inverse(1.0 - cf);
    const double f = (e + 0.5) / N;
    const double r = (f + z * z / (2.0 * N) + z * std::sqrt(f / N - f * f / N + z * z / (4.0 * N * N))) /
                     (1.0 + z * z / N);
    return r * N - e;
}

std::optional<GainRatioSplit> best_threshold_split(const Matrix& X, std::span<const int> labels,
                                                   std::span<const std::size_t> rows, std::size_t attribute,
                                                   std::size_t num_classes, double min_split) {
    const std::size_t n = rows.size();
    if (n < 2) return std::nullopt;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return X(a, attribute) < X(b, attribute); });

    std::vector<double> left(num_classes, 0.0), right(num_classes, 0.0);
    for (auto r : order) right[static_cast<std::size_t>(labels[r])] += 1.0;
    const double nd = static_cast<double>(n);
    const double parent = entropy_bits(right);

    std::size_t candidates = 0;
    std::optional<GainRatioSplit> best;
    std::size_t best_left = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const auto c = static_cast<std::size_t>(labels[order[k - 1]]);
        left[c] += 1.0;
        right[c] -= 1.0;
        const double a = X(order[k - 1], attribute), b = X(order[k], attribute);
        if (!(a < b)) continue;
        const double nl = static_cast<double>(k), nr = nd - nl;
        if (nl < min_split || nr < min_split) continue;
        ++candidates;
        const double gain = parent - (nl / nd) * entropy_bits(left) - (nr / nd) * entropy_bits(right);
        if (!best || gain > best->info_gain + 1e-12) {
            double mid = a + (b - a) * 0.5;
            if (mid >= b) mid = a;
            best = GainRatioSplit{attribute, mid, gain, 0.0};
            best_left = k;
        }
    }
    if (!best) return std::nullopt;
    best->info_gain -= std::log2(static_cast<double>(candidates)) / nd;
    if (best->info_gain <= 0.0) return std::nullopt;
    const double sizes[2] = {static_cast<double>(best_left), static_cast<double>(n - best_left)};
    best->gain_ratio = best->info_gain / entropy_bits(sizes);
    return best;
}

std::optional<GainRatioSplit> choose_gain_ratio_split(const Matrix& X, std::span<const int> labels,
                                                      std::span<const std::size_t> rows, std::size_t num_classes,
                                                      std::size_t min_instances) {
    double min_split = 0.1 * static_cast<double>(rows.size()) / static_cast<double>(num_classes);
    if (min_split <= static_cast<double>(min_instances))
        min_split = static_cast<double>(min_instances);
    else if (min_split > 25.0)
        min_split = 25.0;

    std::vector<GainRatioSplit> valid;
    for (std::size_t a = 0; a < X.cols(); ++a)
        if (auto s = best_threshold_split(X, labels, rows, a, num_classes, min_split)) valid.push_back(*s);
    if (valid.empty()) return std::nullopt;
    double average = 0.0;
    for (const auto& s : valid) average += s.info_gain;
    average /= static_cast<double>(valid.size());

    std::optional<GainRatioSplit> best;
    for (const auto& s : valid)
        if (s.info_gain >= average - 1e-3 && (!best || s.gain_ratio > best->gain_ratio + 1e-12)) best = s;
    return best;
}

double ClassNode::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

ClassTree::ClassTree(std::vector<ClassNode> nodes, std::size_t num_classes)
    : nodes_(std::move(nodes)), num_classes_(num_classes) {
    if (nodes_.empty()) throw std::invalid_argument("ClassTree: no nodes");
}

std::size_t ClassTree::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const ClassNode& n) { return n.is_leaf(); }));
}

std::size_t ClassTree::leaf_for(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
        const auto& n = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.attribute)] <= n.threshold ? n.left : n.right);
    }
    return i;
}

std::vector<double> ClassTree::probabilities(std::span<const double> x) const {
    const auto& leaf = nodes_[leaf_for(x)];
    const double denom = leaf.total() + static_cast<double>(num_classes_);
    std::vector<double> p(num_classes_);
    for (std::size_t c = 0; c < num_classes_; ++c) p[c] = (leaf.counts[c] + 1.0) / denom;
    return p;
}

int ClassTree::classify(std::span<const double> x) const {
    const auto p = probabilities(x);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

namespace {

double leaf_errors(const ClassNode& n) {
    return n.total() - *std::max_element(n.counts.begin(), n.counts.end());
}

class ClassTreeBuilder {
public:
    ClassTreeBuilder(const Matrix& X, std::span<const int> labels, std::size_t k, const ClassTreeParams& params)
        : X_(X), labels_(labels), k_(k), params_(params) {}

    std::vector<ClassNode> build() {
        std::vector<std::size_t> rows(X_.rows());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        grow(rows);
        if (params_.pruning) {
            collapse(0);
            prune(0);
        }
        return compact();
    }

private:
    int grow(const std::vector<std::size_t>& rows) {
        const int idx = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_.back().counts.assign(k_, 0.0);
        for (auto r : rows) nodes_.back().counts[static_cast<std::size_t>(labels_[r])] += 1.0;
        const bool pure = leaf_errors(nodes_.back()) == 0.0;
        if (pure || rows.size() < 2 * params_.min_instances) return idx;

        const auto split = choose_gain_ratio_split(X_, labels_, rows, k_, params_.min_instances);
        if (!split) return idx;
        std::vector<std::size_t> left, right;
        for (auto r : rows) (X_(r, split->attribute) <= split->threshold ? left : right).push_back(r);
        nodes_[static_cast<std::size_t>(idx)].attribute = static_cast<int>(split->attribute);
        nodes_[static_cast<std::size_t>(idx)].threshold = split->threshold;
        const int l = grow(left);
        const int r = grow(right);
        nodes_[static_cast<std::size_t>(idx)].left = l;
        nodes_[static_cast<std::size_t>(idx)].right = r;
        return idx;
    }

    void make_leaf(std::size_t i) {
        nodes_[i].attribute = -1;
        nodes_[i].left = nodes_[i].right = -1;
    }

    double training_errors(std::size_t i) const {
        const auto& n = nodes_[i];
        if (n.is_leaf()) return leaf_errors(n);
        return training_errors(static_cast<std::size_t>(n.left)) + training_errors(static_cast<std::size_t>(n.right));
    }

    void collapse(std::size_t i) {
        if (nodes_[i].is_leaf()) return;
        if (training_errors(i) >= leaf_errors(nodes_[i]) - 1e-3) {
            make_leaf(i);
            return;
        }
        collapse(static_cast<std::size_t>(nodes_[i].left));
        collapse(static_cast<std::size_t>(nodes_[i].right));
    }

    // Returns the estimated errors of the pruned subtree rooted at i.
    double prune(std::size_t i) {
        const auto& n = nodes_[i];
        const double e = leaf_errors(n);
        const double as_leaf = e + c45_added_errors(n.total(), e, params_.confidence);
        if (n.is_leaf()) return as_leaf;
        const double as_tree = prune(static_cast<std::size_t>(n.left)) + prune(static_cast<std::size_t>(n.right));
        if (as_leaf <= as_tree + 0.1) {
            make_leaf(i);
            return as_leaf;
        }
        return as_tree;
    }

    std::vector<ClassNode> compact() const {
        std::vector<ClassNode> out;
        std::function<int(std::size_t)> rec = [&](std::size_t i) -> int {
            const int idx = static_cast<int>(out.size());
            out.push_back(nodes_[i]);
            if (!nodes_[i].is_leaf()) {
                const int l = rec(static_cast<std::size_t>(nodes_[i].left));
                const int r = rec(static_cast<std::size_t>(nodes_[i].right));
                out[static_cast<std::size_t>(idx)].left = l;
                out[static_cast<std::size_t>(idx)].right = r;
            }
            return idx;
        };
        rec(0);
        return out;
    }

    const Matrix& X_;
    std::span<const int> labels_;
    std::size_t k_;
    ClassTreeParams params_;
    std::vector<ClassNode> nodes_;
};

}  // namespace

ClassTree train_class_tree(const Matrix& X, std::span<const int> labels, std::size_t num_classes,
                           const ClassTreeParams& params) {
    if (X.rows() == 0 || labels.size() != X.rows())
        throw std::invalid_argument("class tree: need one label per training row");
    if (num_classes < 2) throw std::invalid_argument("class tree: need at least 2 classes");
    for (int c : labels)
        if (c < 0 || static_cast<std::size_t>(c) >= num_classes)
            throw std::invalid_argument("class tree: label out of range");
    if (params.min_instances < 1) throw std::invalid_argument("class tree: min_instances must be at least 1");
    ClassTreeBuilder builder(X, labels, num_classes, params);
    return ClassTree(builder.build(), num_classes);
}

double expected_value(std::span<const double> probabilities, std::span<const double> values) {
    if (probabilities.size() != values.size()) throw DimensionError("expected_value: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += probabilities[i] * values[i];
    return acc;
}

double RegByDiscModel::predict(std::span<const double> x) const {
    const auto p = tree_.probabilities(x);
    if (mode_ == DensityMode::expected_value) return expected_value(p, disc_.representatives());
    std::vector<double> mids(disc_.bins());
    for (std::size_t b = 0; b < mids.size(); ++b) mids[b] = disc_.midpoint(b);
    return expected_value(p, mids);
}

std::string RegByDiscModel::describe() const {
    std::ostringstream os;
    os.precision(6);
    os << "Regression by discretization: " << disc_.bins() << " bins, class tree with " << tree_.node_count()
       << " nodes / " << tree_.leaf_count() << " leaves\n  representatives:";
    for (double r : disc_.representatives()) os << ' ' << r;
    os << '\n';
    return os.str();
}

RegByDiscModel train_reg_by_disc(const TaskView& train, const RegByDiscParams& params) {
    if (train.size() == 0) throw std::invalid_argument("regression by discretization: empty training set");
    TargetDiscretizer disc(train.target, params.bins);
    std::vector<int> labels(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) labels[r] = static_cast<int>(disc.bin(train.target[r]));
    ClassTree tree = train_class_tree(train.predictors, labels, disc.bins(), params.tree);
    return RegByDiscModel(std::move(disc), std::move(tree), params.mode);
}

}  // namespace telemine
