#include "telemine/trees.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace telemine {

namespace {

double criterion_value(SplitCriterion c, double variance) {
    variance = std::max(0.0, variance);
    return c == SplitCriterion::sd_reduction ? std::sqrt(variance) : variance;
}

double safe_midpoint(double a, double b) {
    double mid = a + (b - a) * 0.5;
    if (mid >= b) mid = a;
    return mid;
}

double mean_of(std::span<const double> y, std::span<const std::size_t> rows) {
    double s = 0.0;
    for (auto r : rows) s += y[r];
    return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
}

double population_variance(std::span<const double> y, std::span<const std::size_t> rows) {
    if (rows.empty()) return 0.0;
    const double m = mean_of(y, rows);
    double ss = 0.0;
    for (auto r : rows) ss += (y[r] - m) * (y[r] - m);
    return ss / static_cast<double>(rows.size());
}

}  // namespace

std::optional<SplitCandidate> best_split(const Matrix& X, std::span<const double> y,
                                         std::span<const std::size_t> rows, std::size_t attribute,
                                         SplitCriterion criterion, std::size_t min_leaf) {
    const std::size_t n = rows.size();
    if (n < 2) return std::nullopt;
    min_leaf = std::max<std::size_t>(1, min_leaf);
    if (2 * min_leaf > n) return std::nullopt;

    std::vector<std::size_t> order(rows.begin(), rows.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return X(a, attribute) < X(b, attribute); });
    if (X(order.front(), attribute) == X(order.back(), attribute)) return std::nullopt;

    // Shift by the node mean before accumulating squares.
    const double m = mean_of(y, rows);
    double s_total = 0.0, q_total = 0.0;
    for (auto r : order) {
        const double d = y[r] - m;
        s_total += d;
        q_total += d * d;
    }
    const double nd = static_cast<double>(n);
    const double parent = criterion_value(criterion, q_total / nd - (s_total / nd) * (s_total / nd));

    std::optional<SplitCandidate> best;
    double sl = 0.0, ql = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double d = y[order[k - 1]] - m;
        sl += d;
        ql += d * d;
        if (k < min_leaf || n - k < min_leaf) continue;
        const double a = X(order[k - 1], attribute), b = X(order[k], attribute);
        if (!(a < b)) continue;
        const double nl = static_cast<double>(k), nr = static_cast<double>(n - k);
        const double sr = s_total - sl, qr = q_total - ql;
        const double left = criterion_value(criterion, ql / nl - (sl / nl) * (sl / nl));
        const double right = criterion_value(criterion, qr / nr - (sr / nr) * (sr / nr));
        const double gain = parent - (nl / nd) * left - (nr / nd) * right;
        // Relative tolerance so that rounding never breaks an exact tie
        // toward the higher threshold.
        if (!best || gain > best->gain + 1e-12 * parent) best = SplitCandidate{attribute, safe_midpoint(a, b), gain, k};
    }
    return best;
}

std::optional<SplitCandidate> best_split_any(const Matrix& X, std::span<const double> y,
                                             std::span<const std::size_t> rows, SplitCriterion criterion,
                                             std::size_t min_leaf) {
    std::optional<SplitCandidate> best;
    for (std::size_t a = 0; a < X.cols(); ++a) {
        auto s = best_split(X, y, rows, a, criterion, min_leaf);
        if (s && (!best || s->gain > best->gain + 1e-12 * std::abs(best->gain))) best = s;
    }
    return best;
}

// ---------------------------------------------------------------------------
// RegressionTree

RegressionTree::RegressionTree(std::vector<TreeNode> nodes, std::vector<std::string> predictor_names,
                               std::string kind)
    : nodes_(std::move(nodes)), names_(std::move(predictor_names)), kind_(std::move(kind)) {
    if (nodes_.empty()) throw std::invalid_argument("RegressionTree: no nodes");
    for (auto& node : nodes_) node.model.predictor_names = names_;
}

std::size_t RegressionTree::leaf_for(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
        const auto& node = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.attribute)] <= node.threshold ? node.left
                                                                                                    : node.right);
    }
    return i;
}

double RegressionTree::predict(std::span<const double> x) const { return nodes_[leaf_for(x)].model.predict(x); }

std::size_t RegressionTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t RegressionTree::depth() const {
    std::function<std::size_t(std::size_t)> rec = [&](std::size_t i) -> std::size_t {
        const auto& n = nodes_[i];
        if (n.is_leaf()) return 0;
        return 1 + std::max(rec(static_cast<std::size_t>(n.left)), rec(static_cast<std::size_t>(n.right)));
    };
    return rec(0);
}

std::vector<Condition> RegressionTree::path_to(std::size_t node) const {
    std::vector<Condition> path;
    std::size_t child = node;
    int parent = nodes_[node].parent;
    while (parent >= 0) {
        const auto& p = nodes_[static_cast<std::size_t>(parent)];
        path.push_back({static_cast<std::size_t>(p.attribute), p.left == static_cast<int>(child), p.threshold});
        child = static_cast<std::size_t>(parent);
        parent = p.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::size_t> RegressionTree::leaves() const {
    std::vector<std::size_t> out;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        const auto& n = nodes_[i];
        if (n.is_leaf()) {
            out.push_back(i);
            return;
        }
        rec(static_cast<std::size_t>(n.left));
        rec(static_cast<std::size_t>(n.right));
    };
    rec(0);
    return out;
}

std::string RegressionTree::describe() const {
    std::ostringstream os;
    os.precision(6);
    os << kind_ << " (" << node_count() << " nodes, " << leaf_count() << " leaves)\n";
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int indent) {
        const auto& n = nodes_[i];
        const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        if (n.is_leaf()) {
            os << pad << "leaf (n=" << n.n_instances << "): " << n.model.to_string() << '\n';
            return;
        }
        const auto& name = names_[static_cast<std::size_t>(n.attribute)];
        os << pad << name << " <= " << n.threshold << '\n';
        rec(static_cast<std::size_t>(n.left), indent + 1);
        os << pad << name << " > " << n.threshold << '\n';
        rec(static_cast<std::size_t>(n.right), indent + 1);
    };
    rec(0, 0);
    return os.str();
}

namespace {

// Copies the subtree reachable from the root into a dense vector.
std::vector<TreeNode> compact(const std::vector<TreeNode>& nodes) {
    std::vector<TreeNode> out;
    std::function<int(std::size_t, int)> rec = [&](std::size_t i, int parent) -> int {
        const int idx = static_cast<int>(out.size());
        out.push_back(nodes[i]);
        out.back().parent = parent;
        if (!nodes[i].is_leaf()) {
            const int l = rec(static_cast<std::size_t>(nodes[i].left), idx);
            const int r = rec(static_cast<std::size_t>(nodes[i].right), idx);
            out[static_cast<std::size_t>(idx)].left = l;
            out[static_cast<std::size_t>(idx)].right = r;
        }
        return idx;
    };
    rec(0, -1);
    return out;
}

void make_leaf(TreeNode& node) {
    node.attribute = -1;
    node.left = node.right = -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// M5

double m5_pruning_factor(std::size_t n, std::size_t parameters) {
    if (n <= parameters) return 10.0;
    return static_cast<double>(n + parameters) / static_cast<double>(n - parameters);
}

namespace {

class M5Builder {
public:
    M5Builder(const Matrix& X, std::span<const double> y, const M5Params& params) : X_(X), y_(y), params_(params) {}

    std::vector<TreeNode> build(std::vector<std::size_t> rows) {
        root_sd_ = std::sqrt(population_variance(y_, rows));
        grow(std::move(rows), -1);
        prune_or_model(0);
        if (params_.smoothing) smooth();
        return compact(nodes_);
    }

private:
    int grow(std::vector<std::size_t> rows, int parent) {
        const int idx = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        rows_.push_back({});
        attrs_.push_back({});
        params_count_.push_back(1);
        auto& node = nodes_.back();
        node.parent = parent;
        node.n_instances = rows.size();
        node.model = LinearModel::constant(mean_of(y_, rows), X_.cols());

        const double sd = std::sqrt(population_variance(y_, rows));
        std::optional<SplitCandidate> split;
        if (rows.size() >= 2 * params_.min_instances && sd >= params_.sd_fraction * root_sd_ && sd > 0.0)
            split = best_split_any(X_, y_, rows, SplitCriterion::sd_reduction, params_.min_instances);

        if (split && split->gain > 0.0) {
            std::vector<std::size_t> left, right;
            for (auto r : rows) (X_(r, split->attribute) <= split->threshold ? left : right).push_back(r);
            nodes_[static_cast<std::size_t>(idx)].attribute = static_cast<int>(split->attribute);
            nodes_[static_cast<std::size_t>(idx)].threshold = split->threshold;
            const int l = grow(std::move(left), idx);
            const int r = grow(std::move(right), idx);
            nodes_[static_cast<std::size_t>(idx)].left = l;
            nodes_[static_cast<std::size_t>(idx)].right = r;
            std::vector<std::size_t> used = attrs_[static_cast<std::size_t>(l)];
            used.insert(used.end(), attrs_[static_cast<std::size_t>(r)].begin(), attrs_[static_cast<std::size_t>(r)].end());
            used.push_back(split->attribute);
            std::sort(used.begin(), used.end());
            used.erase(std::unique(used.begin(), used.end()), used.end());
            attrs_[static_cast<std::size_t>(idx)] = std::move(used);
        }
        rows_[static_cast<std::size_t>(idx)] = std::move(rows);
        return idx;
    }

    double rmse(const LinearModel& m, std::span<const std::size_t> rows) const {
        double ss = 0.0;
        for (auto r : rows) {
            const double e = m.predict(X_.row(r)) - y_[r];
            ss += e * e;
        }
        return std::sqrt(ss / static_cast<double>(rows.size()));
    }

    double adjusted(const LinearModel& m, std::span<const std::size_t> rows) const {
        return rmse(m, rows) * m5_pruning_factor(rows.size(), m.term_count() + 1);
    }

    // Least squares over `attrs`, then drop the term with the smallest
    // standardised coefficient while that lowers the adjusted error.
    LinearModel node_model(std::span<const std::size_t> rows, std::vector<std::size_t> attrs) const {
        std::vector<double> sd(X_.cols(), 0.0);
        std::erase_if(attrs, [&](std::size_t a) {
            double m = 0.0;
            for (auto r : rows) m += X_(r, a);
            m /= static_cast<double>(rows.size());
            double ss = 0.0;
            for (auto r : rows) ss += (X_(r, a) - m) * (X_(r, a) - m);
            sd[a] = std::sqrt(ss / static_cast<double>(rows.size()));
            return sd[a] <= 0.0;
        });
        LinearModel best = fit_least_squares(X_, y_, rows, attrs, params_.ridge);
        double best_err = adjusted(best, rows);
        while (!attrs.empty()) {
            std::size_t drop = 0;
            double smallest = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < attrs.size(); ++k) {
                const double s = std::abs(best.coefficients[attrs[k]]) * sd[attrs[k]];
                if (s < smallest) {
                    smallest = s;
                    drop = k;
                }
            }
            std::vector<std::size_t> trial_attrs = attrs;
            trial_attrs.erase(trial_attrs.begin() + static_cast<std::ptrdiff_t>(drop));
            LinearModel trial = fit_least_squares(X_, y_, rows, trial_attrs, params_.ridge);
            const double err = adjusted(trial, rows);
            if (err > best_err) break;
            best = std::move(trial);
            best_err = err;
            attrs = std::move(trial_attrs);
        }
        return best;
    }

    double subtree_predict(std::size_t i, std::span<const double> x) const {
        while (!nodes_[i].is_leaf()) {
            const auto& n = nodes_[i];
            i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.attribute)] <= n.threshold ? n.left : n.right);
        }
        return nodes_[i].model.predict(x);
    }

    void prune_or_model(std::size_t i) {
        const auto& rows = rows_[i];
        if (nodes_[i].is_leaf()) {
            params_count_[i] = 1;
            nodes_[i].estimated_error = adjusted(nodes_[i].model, rows);
            return;
        }
        const auto l = static_cast<std::size_t>(nodes_[i].left), r = static_cast<std::size_t>(nodes_[i].right);
        prune_or_model(l);
        prune_or_model(r);
        nodes_[i].model = node_model(rows, attrs_[i]);
        const std::size_t model_params = nodes_[i].model.term_count() + 1;
        const double model_err = adjusted(nodes_[i].model, rows);

        double ss = 0.0;
        for (auto row : rows) {
            const double e = subtree_predict(i, X_.row(row)) - y_[row];
            ss += e * e;
        }
        const std::size_t subtree_params = params_count_[l] + params_count_[r] + 1;
        const double subtree_err =
            std::sqrt(ss / static_cast<double>(rows.size())) * m5_pruning_factor(rows.size(), subtree_params);

        if (params_.pruning && (model_err <= subtree_err || model_err < root_sd_ * 1e-5)) {
            make_leaf(nodes_[i]);
            params_count_[i] = model_params;
            nodes_[i].estimated_error = model_err;
        } else {
            params_count_[i] = subtree_params;
            nodes_[i].estimated_error = subtree_err;
        }
    }

    // Fold p' = (n·p + k·q)/(n + k) along the path into each leaf model, where
    // q is the ancestor model and n the training count of the child below it.
    void smooth() {
        const double k = params_.smoothing_constant;
        std::vector<LinearModel> smoothed(nodes_.size());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (!nodes_[i].is_leaf()) {
                rec(static_cast<std::size_t>(nodes_[i].left));
                rec(static_cast<std::size_t>(nodes_[i].right));
                return;
            }
            LinearModel p = nodes_[i].model;
            std::size_t child = i;
            int parent = nodes_[i].parent;
            while (parent >= 0) {
                const auto& q = nodes_[static_cast<std::size_t>(parent)].model;
                const double n = static_cast<double>(nodes_[child].n_instances);
                p.intercept = (n * p.intercept + k * q.intercept) / (n + k);
                for (std::size_t j = 0; j < p.coefficients.size(); ++j)
                    p.coefficients[j] = (n * p.coefficients[j] + k * q.coefficients[j]) / (n + k);
                child = static_cast<std::size_t>(parent);
                parent = nodes_[child].parent;
            }
            smoothed[i] = std::move(p);
        };
        rec(0);
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].is_leaf() && !smoothed[i].coefficients.empty()) nodes_[i].model = std::move(smoothed[i]);
    }

    const Matrix& X_;
    std::span<const double> y_;
    M5Params params_;
    double root_sd_ = 0.0;
    std::vector<TreeNode> nodes_;
    std::vector<std::vector<std::size_t>> rows_;
    std::vector<std::vector<std::size_t>> attrs_;
    std::vector<std::size_t> params_count_;
};

}  // namespace

RegressionTree train_m5_on_rows(const Matrix& X, std::span<const double> y, std::span<const std::size_t> rows,
                                const std::vector<std::string>& names, const M5Params& params) {
    if (rows.empty()) throw std::invalid_argument("M5: empty training set");
    if (params.min_instances < 1) throw std::invalid_argument("M5: min_instances must be at least 1");
    M5Builder builder(X, y, params);
    return RegressionTree(builder.build({rows.begin(), rows.end()}), names, "M5 model tree");
}

RegressionTree train_m5p(const TaskView& train, const M5Params& params) {
    std::vector<std::size_t> rows(train.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return train_m5_on_rows(train.predictors, train.target, rows, train.predictor_names, params);
}

// ---------------------------------------------------------------------------
// REPTree

namespace {

class RepBuilder {
public:
    RepBuilder(const Matrix& X, std::span<const double> y, const RepTreeParams& params)
        : X_(X), y_(y), params_(params) {}

    std::vector<TreeNode> build(const std::vector<std::size_t>& grow_rows, const std::vector<std::size_t>& prune_rows) {
        root_var_ = population_variance(y_, grow_rows);
        grow(grow_rows, -1, 0);
        if (!prune_rows.empty()) {
            prune(0, prune_rows);
            backfit(0, concat(grow_rows, prune_rows));
        }
        return compact(nodes_);
    }

private:
    static std::vector<std::size_t> concat(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out(a);
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }

    int grow(const std::vector<std::size_t>& rows, int parent, int depth) {
        const int idx = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_.back().parent = parent;
        nodes_.back().n_instances = rows.size();
        nodes_.back().model = LinearModel::constant(mean_of(y_, rows), X_.cols());

        const double var = population_variance(y_, rows);
        const bool depth_ok = params_.max_depth < 0 || depth < params_.max_depth;
        std::optional<SplitCandidate> split;
        if (depth_ok && rows.size() >= 2 * params_.min_instances && var > 0.0 &&
            var >= params_.min_variance_proportion * root_var_)
            split = best_split_any(X_, y_, rows, SplitCriterion::variance_reduction, params_.min_instances);
        if (split && split->gain > 0.0) {
            std::vector<std::size_t> left, right;
            for (auto r : rows) (X_(r, split->attribute) <= split->threshold ? left : right).push_back(r);
            nodes_[static_cast<std::size_t>(idx)].attribute = static_cast<int>(split->attribute);
            nodes_[static_cast<std::size_t>(idx)].threshold = split->threshold;
            const int l = grow(left, idx, depth + 1);
            const int r = grow(right, idx, depth + 1);
            nodes_[static_cast<std::size_t>(idx)].left = l;
            nodes_[static_cast<std::size_t>(idx)].right = r;
        }
        return idx;
    }

    // Returns the held-out SSE of the (possibly pruned) subtree.
    double prune(std::size_t i, const std::vector<std::size_t>& rows) {
        auto& node = nodes_[i];
        double leaf_sse = 0.0;
        for (auto r : rows) {
            const double e = y_[r] - node.model.intercept;
            leaf_sse += e * e;
        }
        if (node.is_leaf()) return leaf_sse;
        std::vector<std::size_t> left, right;
        for (auto r : rows) (X_(r, static_cast<std::size_t>(node.attribute)) <= node.threshold ? left : right).push_back(r);
        const double subtree_sse = prune(static_cast<std::size_t>(node.left), left) +
                                   prune(static_cast<std::size_t>(node.right), right);
        if (leaf_sse <= subtree_sse) {
            make_leaf(nodes_[i]);
            return leaf_sse;
        }
        return subtree_sse;
    }

    void backfit(std::size_t i, const std::vector<std::size_t>& rows) {
        auto& node = nodes_[i];
        node.n_instances = rows.size();
        if (!rows.empty()) node.model.intercept = mean_of(y_, rows);
        if (node.is_leaf()) return;
        std::vector<std::size_t> left, right;
        for (auto r : rows) (X_(r, static_cast<std::size_t>(node.attribute)) <= node.threshold ? left : right).push_back(r);
        backfit(static_cast<std::size_t>(node.left), left);
        backfit(static_cast<std::size_t>(node.right), right);
    }

    const Matrix& X_;
    std::span<const double> y_;
    RepTreeParams params_;
    double root_var_ = 0.0;
    std::vector<TreeNode> nodes_;
};

}  // namespace

RegressionTree train_reptree(const TaskView& train, const RepTreeParams& params, RngStream& rng) {
    if (train.size() == 0) throw std::invalid_argument("REPTree: empty training set");
    if (!(params.min_variance_proportion > 0.0 && params.min_variance_proportion < 1.0))
        throw std::invalid_argument("REPTree: min_variance_proportion must lie in (0, 1)");
    if (params.pruning_folds < 2) throw std::invalid_argument("REPTree: pruning_folds must be at least 2");

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> grow_rows, prune_rows;
    if (params.pruning && train.size() >= params.pruning_folds) {
        rng.shuffle(std::span<std::size_t>(order));
        const std::size_t n_prune = train.size() / params.pruning_folds;
        prune_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_prune));
        grow_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_prune), order.end());
        std::sort(prune_rows.begin(), prune_rows.end());
        std::sort(grow_rows.begin(), grow_rows.end());
    } else {
        grow_rows = order;
    }
    RepBuilder builder(train.predictors, train.target, params);
    return RegressionTree(builder.build(grow_rows, prune_rows), train.predictor_names, "REPTree");
}

// ---------------------------------------------------------------------------
// Decision stump

std::vector<std::vector<std::size_t>> presort_columns(const Matrix& X) {
    std::vector<std::vector<std::size_t>> sorted(X.cols(), std::vector<std::size_t>(X.rows()));
    for (std::size_t a = 0; a < X.cols(); ++a) {
        auto& order = sorted[a];
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return X(p, a) < X(q, a); });
    }
    return sorted;
}

StumpFit fit_weighted_stump(const Matrix& X, std::span<const double> y, std::span<const double> weights,
                            const std::vector<std::vector<std::size_t>>& sorted) {
    const std::size_t n = X.rows();
    if (n == 0) throw std::invalid_argument("decision stump: empty training set");
    const bool unit = weights.empty();
    auto w = [&](std::size_t r) { return unit ? 1.0 : weights[r]; };

    double W = 0.0, Sy = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        W += w(r);
        Sy += w(r) * y[r];
    }
    StumpFit fit;
    if (!(W > 0.0)) throw std::invalid_argument("decision stump: weights sum to zero");
    const double m = Sy / W;
    double S = 0.0, Q = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double d = y[r] - m;
        S += w(r) * d;
        Q += w(r) * d * d;
    }
    const double total_sse = std::max(0.0, Q - S * S / W);
    fit.global_value = m + S / W;
    fit.sse = total_sse;

    double best_sse = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < X.cols(); ++a) {
        const auto& order = sorted[a];
        double wl = 0.0, sl = 0.0, ql = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            const std::size_t r = order[k - 1];
            const double d = y[r] - m;
            wl += w(r);
            sl += w(r) * d;
            ql += w(r) * d * d;
            const double lo = X(r, a), hi = X(order[k], a);
            if (!(lo < hi)) continue;
            const double wr = W - wl;
            if (wl <= 0.0 || wr <= 0.0) continue;
            const double sr = S - sl, qr = Q - ql;
            const double sse = std::max(0.0, ql - sl * sl / wl) + std::max(0.0, qr - sr * sr / wr);
            if (sse < best_sse - 1e-12 * total_sse) {
                best_sse = sse;
                fit.attribute = a;
                fit.threshold = safe_midpoint(lo, hi);
                fit.left_value = m + sl / wl;
                fit.right_value = m + sr / wr;
            }
        }
    }
    if (best_sse < total_sse * (1.0 - 1e-10)) {
        fit.has_split = true;
        fit.sse = best_sse;
    }
    return fit;
}

RegressionTree train_decision_stump(const TaskView& train) {
    if (train.size() == 0) throw std::invalid_argument("decision stump: empty training set");
    const auto sorted = presort_columns(train.predictors);
    const StumpFit fit = fit_weighted_stump(train.predictors, train.target, {}, sorted);
    const std::size_t d = train.dims();

    std::vector<TreeNode> nodes(1);
    nodes[0].n_instances = train.size();
    nodes[0].model = LinearModel::constant(fit.global_value, d);
    if (fit.has_split) {
        std::size_t n_left = 0;
        for (std::size_t r = 0; r < train.size(); ++r)
            if (train.predictors(r, fit.attribute) <= fit.threshold) ++n_left;
        nodes[0].attribute = static_cast<int>(fit.attribute);
        nodes[0].threshold = fit.threshold;
        nodes[0].left = 1;
        nodes[0].right = 2;
        TreeNode left, right;
        left.parent = right.parent = 0;
        left.n_instances = n_left;
        right.n_instances = train.size() - n_left;
        left.model = LinearModel::constant(fit.left_value, d);
        right.model = LinearModel::constant(fit.right_value, d);
        nodes.push_back(std::move(left));
        nodes.push_back(std::move(right));
    }
    return RegressionTree(std::move(nodes), train.predictor_names, "Decision stump");
}

}  // namespace telemine
