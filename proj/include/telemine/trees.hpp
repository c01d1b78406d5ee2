#pragma once

// Binary regression trees over numeric predictors: M5 model trees, REPTree
// (variance splits, reduced-error pruning with back-fitting) and the
// one-split decision stump. The node storage and split search are shared
// with the rule learners.

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"
#include "telemine/regressor.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace telemine {

enum class SplitCriterion {
    sd_reduction,        // sd(T) − Σ |Tᵢ|/|T| · sd(Tᵢ)
    variance_reduction,  // var(T) − Σ |Tᵢ|/|T| · var(Tᵢ)
};

struct SplitCandidate {
    std::size_t attribute = 0;
    double threshold = 0.0;  // rows with value <= threshold go left
    double gain = 0.0;
    std::size_t left_count = 0;
};

/// Best binary split of `rows` on one attribute. Candidate thresholds are the
/// midpoints between consecutive distinct sorted values with at least
/// `min_leaf` rows on each side; ties in gain keep the lower threshold.
/// Population standard deviation / variance. nullopt when no candidate exists
/// (attribute constant on the subset).
std::optional<SplitCandidate> best_split(const Matrix& X, std::span<const double> y,
                                         std::span<const std::size_t> rows, std::size_t attribute,
                                         SplitCriterion criterion, std::size_t min_leaf = 1);

/// best_split over every attribute; ties keep the lower attribute index.
std::optional<SplitCandidate> best_split_any(const Matrix& X, std::span<const double> y,
                                             std::span<const std::size_t> rows, SplitCriterion criterion,
                                             std::size_t min_leaf = 1);

struct TreeNode {
    // Internal when attribute >= 0.
    int attribute = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int parent = -1;
    // Prediction model of the node. Leaves answer with it; for internal
    // nodes of model trees it is the node's own model used by pruning and
    // smoothing.
    LinearModel model;
    std::size_t n_instances = 0;
    double estimated_error = 0.0;

    bool is_leaf() const noexcept { return attribute < 0; }
};

struct Condition {
    std::size_t attribute = 0;
    bool less_or_equal = true;  // x[attribute] <= threshold, else >
    double threshold = 0.0;

    bool holds(std::span<const double> x) const {
        return less_or_equal ? x[attribute] <= threshold : x[attribute] > threshold;
    }
};

class RegressionTree final : public Regressor {
public:
    RegressionTree() = default;
    RegressionTree(std::vector<TreeNode> nodes, std::vector<std::string> predictor_names, std::string kind);

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    /// Index of the leaf reached by x.
    std::size_t leaf_for(std::span<const double> x) const;

    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    const TreeNode& root() const { return nodes_.front(); }
    const std::vector<std::string>& predictor_names() const noexcept { return names_; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t leaf_count() const;
    std::size_t depth() const;

    /// Root-to-node path as split conditions.
    std::vector<Condition> path_to(std::size_t node) const;

    /// Leaf indices in left-to-right order.
    std::vector<std::size_t> leaves() const;

private:
    std::vector<TreeNode> nodes_;
    std::vector<std::string> names_;
    std::string kind_;
};

// ---------------------------------------------------------------------------

struct M5Params {
    std::size_t min_instances = 2;  // per leaf
    bool smoothing = true;
    bool pruning = true;
    double sd_fraction = 0.05;  // stop splitting below this fraction of the root sd
    double smoothing_constant = 15.0;
    double ridge = 1e-8;
};

/// M5 model tree: SDR splits, a linear model per node over the attributes
/// tested in its subtree (greedy term elimination), bottom-up pruning on the
/// (n+ν)/(n−ν)-adjusted error, optional smoothing folded into the leaf
/// models.
RegressionTree train_m5p(const TaskView& train, const M5Params& params = {});

/// Same as train_m5p but over a subset of rows of a larger view.
RegressionTree train_m5_on_rows(const Matrix& X, std::span<const double> y, std::span<const std::size_t> rows,
                                const std::vector<std::string>& names, const M5Params& params);

/// (n + ν)/(n − ν), or 10 when n <= ν.
double m5_pruning_factor(std::size_t n, std::size_t parameters);

// ---------------------------------------------------------------------------

struct RepTreeParams {
    int max_depth = -1;  // −1: unlimited
    double min_variance_proportion = 0.001;
    std::size_t min_instances = 2;  // per leaf
    std::size_t pruning_folds = 3;  // 1/folds of the rows are held out
    bool pruning = true;
};

RegressionTree train_reptree(const TaskView& train, const RepTreeParams& params, RngStream& rng);

// ---------------------------------------------------------------------------

/// Per-attribute row orders sorted by value (ties by row index), shared by
/// repeated stump fits over the same rows.
std::vector<std::vector<std::size_t>> presort_columns(const Matrix& X);

struct StumpFit {
    bool has_split = false;
    std::size_t attribute = 0;
    double threshold = 0.0;
    double left_value = 0.0;
    double right_value = 0.0;
    double global_value = 0.0;
    double sse = 0.0;  // weighted SSE of the chosen model

    double predict(std::span<const double> x) const {
        if (!has_split) return global_value;
        return x[attribute] <= threshold ? left_value : right_value;
    }
};

/// Exhaustive search over (attribute, midpoint threshold) minimising the
/// weighted SSE of the two leaf means. Pass empty weights for unit weights.
StumpFit fit_weighted_stump(const Matrix& X, std::span<const double> y, std::span<const double> weights,
                            const std::vector<std::vector<std::size_t>>& sorted);

RegressionTree train_decision_stump(const TaskView& train);

}  // namespace telemine
