#include "telemine/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace telemine {

bool Rule::matches(std::span<const double> x) const {
    return std::all_of(conditions.begin(), conditions.end(), [&](const Condition& c) { return c.holds(x); });
}

std::string Rule::to_string(const std::vector<std::string>& names) const {
    std::ostringstream os;
    os.precision(6);
    if (conditions.empty()) os << "true";
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const auto& c = conditions[i];
        if (i) os << " ∧ ";
        os << names[c.attribute] << (c.less_or_equal ? " <= " : " > ") << c.threshold;
    }
    LinearModel named = model;
    named.predictor_names = names;
    os << " → " << named.to_string();
    return os.str();
}

RuleList::RuleList(std::vector<Rule> rules, LinearModel default_model, std::vector<std::string> names)
    : rules_(std::move(rules)), default_(std::move(default_model)), names_(std::move(names)) {}

double RuleList::predict(std::span<const double> x) const {
    for (const auto& r : rules_)
        if (r.matches(x)) return r.model.predict(x);
    return default_.predict(x);
}

std::string RuleList::describe() const {
    std::ostringstream os;
    os << "M5 rules (" << rules_.size() << ")\n";
    for (const auto& r : rules_) os << r.to_string(names_) << "  [" << r.coverage << "]\n";
    LinearModel named = default_;
    named.predictor_names = names_;
    os << "default → " << named.to_string() << '\n';
    return os.str();
}

M5Params m5rules_defaults() {
    M5Params p;
    p.min_instances = 4;
    return p;
}

std::size_t best_leaf(const RegressionTree& tree) {
    const auto leaves = tree.leaves();
    std::size_t best = leaves.front();
    for (auto i : leaves) {
        const auto& a = tree.nodes()[i];
        const auto& b = tree.nodes()[best];
        if (a.n_instances > b.n_instances || (a.n_instances == b.n_instances && a.estimated_error < b.estimated_error))
            best = i;
    }
    return best;
}

RuleList train_m5rules(const TaskView& train, const M5Params& params) {
    if (train.size() == 0) throw std::invalid_argument("M5Rules: empty training set");
    const auto& X = train.predictors;
    std::vector<std::size_t> remaining(train.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});

    std::vector<Rule> rules;
    while (!remaining.empty()) {
        const RegressionTree tree = train_m5_on_rows(X, train.target, remaining, train.predictor_names, params);
        const std::size_t leaf = best_leaf(tree);
        Rule rule;
        rule.conditions = tree.path_to(leaf);
        rule.model = tree.nodes()[leaf].model;
        rule.model.predictor_names.clear();
        rule.estimated_error = tree.nodes()[leaf].estimated_error;

        std::vector<std::size_t> rest;
        for (auto r : remaining) {
            if (rule.matches(X.row(r)))
                ++rule.coverage;
            else
                rest.push_back(r);
        }
        // The leaf's own rows satisfy its path, so coverage is at least one.
        remaining = std::move(rest);
        rules.push_back(std::move(rule));
    }
    LinearModel fallback = LinearModel::constant(mean(train.target), train.dims());
    return RuleList(std::move(rules), std::move(fallback), train.predictor_names);
}

// ---------------------------------------------------------------------------
// Decision table

EqualWidthBinner::EqualWidthBinner(const Matrix& X, std::size_t bins) : bins_(bins) {
    if (bins == 0) throw std::invalid_argument("EqualWidthBinner: bins must be positive");
    lo_.assign(X.cols(), 0.0);
    width_.assign(X.cols(), 0.0);
    for (std::size_t c = 0; c < X.cols(); ++c) {
        if (X.rows() == 0) continue;
        double lo = X(0, c), hi = X(0, c);
        for (std::size_t r = 1; r < X.rows(); ++r) {
            lo = std::min(lo, X(r, c));
            hi = std::max(hi, X(r, c));
        }
        lo_[c] = lo;
        width_[c] = (hi - lo) / static_cast<double>(bins);
    }
}

int EqualWidthBinner::bin(std::size_t column, double v) const {
    if (!(width_[column] > 0.0)) return 0;
    const double b = std::floor((v - lo_[column]) / width_[column]);
    if (b < 0.0) return 0;
    if (b >= static_cast<double>(bins_)) return static_cast<int>(bins_) - 1;
    return static_cast<int>(b);
}

std::vector<std::vector<int>> bin_rows(const Matrix& X, const EqualWidthBinner& binner) {
    std::vector<std::vector<int>> out(X.rows(), std::vector<int>(X.cols()));
    for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < X.cols(); ++c) out[r][c] = binner.bin(c, X(r, c));
    return out;
}

namespace {

std::string pack_key(const std::vector<int>& bins, std::span<const std::size_t> features) {
    std::string key;
    key.reserve(features.size() * sizeof(int));
    for (auto f : features) key.append(reinterpret_cast<const char*>(&bins[f]), sizeof(int));
    return key;
}

}  // namespace

double decision_table_loo_rmse(const std::vector<std::vector<int>>& binned, std::span<const double> y,
                               std::span<const std::size_t> features) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("decision table: empty training set");
    std::unordered_map<std::string, TableCell> cells;
    std::vector<std::string> keys(n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        keys[r] = pack_key(binned[r], features);
        auto& cell = cells[keys[r]];
        cell.sum += y[r];
        ++cell.count;
        total += y[r];
    }
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const auto& cell = cells[keys[r]];
        double pred;
        if (cell.count > 1)
            pred = (cell.sum - y[r]) / static_cast<double>(cell.count - 1);
        else if (n > 1)
            pred = (total - y[r]) / static_cast<double>(n - 1);
        else
            pred = y[r];
        ss += (pred - y[r]) * (pred - y[r]);
    }
    return std::sqrt(ss / static_cast<double>(n));
}

DecisionTableModel::DecisionTableModel(std::vector<std::size_t> features, std::map<std::vector<int>, TableCell> cells,
                                       double global_mean, EqualWidthBinner binner, std::vector<std::string> names,
                                       std::vector<SubsetScore> trace)
    : features_(std::move(features)),
      cells_(std::move(cells)),
      global_mean_(global_mean),
      binner_(std::move(binner)),
      names_(std::move(names)),
      trace_(std::move(trace)) {}

std::vector<int> DecisionTableModel::key_for(std::span<const double> x) const {
    std::vector<int> key;
    key.reserve(features_.size());
    for (auto f : features_) key.push_back(binner_.bin(f, x[f]));
    return key;
}

double DecisionTableModel::predict(std::span<const double> x) const {
    auto it = cells_.find(key_for(x));
    return it == cells_.end() ? global_mean_ : it->second.mean();
}

std::string DecisionTableModel::describe() const {
    std::ostringstream os;
    os.precision(6);
    os << "Decision table on {";
    for (std::size_t i = 0; i < features_.size(); ++i) os << (i ? ", " : "") << names_[features_[i]];
    os << "}: " << cells_.size() << " cells, default " << global_mean_ << '\n';
    for (const auto& [key, cell] : cells_) {
        os << " ";
        for (auto b : key) os << ' ' << b;
        os << " -> " << cell.mean() << " (n=" << cell.count << ")\n";
    }
    return os.str();
}

DecisionTableModel build_decision_table(const TaskView& train, std::vector<std::size_t> features,
                                        const DecisionTableParams& params) {
    if (train.size() == 0) throw std::invalid_argument("decision table: empty training set");
    std::sort(features.begin(), features.end());
    EqualWidthBinner binner(train.predictors, params.bins);
    std::map<std::vector<int>, TableCell> cells;
    for (std::size_t r = 0; r < train.size(); ++r) {
        std::vector<int> key;
        for (auto f : features) key.push_back(binner.bin(f, train.predictors(r, f)));
        auto& cell = cells[key];
        cell.sum += train.target[r];
        ++cell.count;
    }
    return DecisionTableModel(std::move(features), std::move(cells), mean(train.target), std::move(binner),
                              train.predictor_names, {});
}

DecisionTableModel train_decision_table(const TaskView& train, const DecisionTableParams& params) {
    if (train.size() == 0) throw std::invalid_argument("decision table: empty training set");
    if (params.search_width == 0) throw std::invalid_argument("decision table: search_width must be positive");
    const std::size_t d = train.dims();
    EqualWidthBinner binner(train.predictors, params.bins);
    const auto binned = bin_rows(train.predictors, binner);

    std::vector<SubsetScore> trace;
    std::set<std::vector<std::size_t>> visited;
    auto evaluate = [&](std::vector<std::size_t> subset) -> const SubsetScore& {
        const double s = decision_table_loo_rmse(binned, train.target, subset);
        visited.insert(subset);
        trace.push_back({std::move(subset), s});
        return trace.back();
    };
    // a strictly better than b, with near-equal scores resolved by size.
    auto better = [](const SubsetScore& a, const SubsetScore& b) {
        const double tol = 1e-12 * std::max(1.0, std::abs(b.loo_rmse));
        if (a.loo_rmse < b.loo_rmse - tol) return true;
        if (a.loo_rmse > b.loo_rmse + tol) return false;
        return a.features.size() < b.features.size();
    };

    SubsetScore best = evaluate({});
    std::vector<SubsetScore> open{best};
    std::size_t stale = 0;
    while (!open.empty() && stale < params.search_width) {
        auto pick = std::min_element(open.begin(), open.end(), [&](const SubsetScore& a, const SubsetScore& b) {
            if (better(a, b)) return true;
            if (better(b, a)) return false;
            return a.features < b.features;
        });
        const SubsetScore node = *pick;
        open.erase(pick);

        bool improved = false;
        for (std::size_t f = 0; f < d; ++f) {
            std::vector<std::size_t> child = node.features;
            auto pos = std::lower_bound(child.begin(), child.end(), f);
            if (pos != child.end() && *pos == f)
                child.erase(pos);
            else
                child.insert(pos, f);
            if (visited.count(child)) continue;
            const SubsetScore scored = evaluate(std::move(child));
            open.push_back(scored);
            if (better(scored, best)) {
                best = scored;
                improved = true;
            }
        }
        stale = improved ? 0 : stale + 1;
    }

    DecisionTableModel table = build_decision_table(train, best.features, params);
    return DecisionTableModel(table.selected_features(), table.cells(), table.global_mean(), binner,
                              train.predictor_names, std::move(trace));
}

}  // namespace telemine
