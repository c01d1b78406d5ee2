#pragma once

// Rule learners: M5Rules (repeatedly grow an M5 tree, keep its best leaf as a
// rule, drop the rows it covers) and a decision table over a feature subset
// chosen by best-first search on leave-one-out error.

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"
#include "telemine/regressor.hpp"
#include "telemine/trees.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace telemine {

struct Rule {
    std::vector<Condition> conditions;
    LinearModel model;
    std::size_t coverage = 0;  // training rows removed by this rule
    double estimated_error = 0.0;

    bool matches(std::span<const double> x) const;

    /// "a <= 1 ∧ b > 2 → w0 + w1*a", or "true → ..." when unconditional.
    std::string to_string(const std::vector<std::string>& names) const;
};

class RuleList final : public Regressor {
public:
    RuleList(std::vector<Rule> rules, LinearModel default_model, std::vector<std::string> names);

    /// The first matching rule answers; the default model otherwise.
    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const LinearModel& default_model() const noexcept { return default_; }

private:
    std::vector<Rule> rules_;
    LinearModel default_;
    std::vector<std::string> names_;
};

/// M5 parameters with the rule learner's default leaf size of 4.
M5Params m5rules_defaults();

RuleList train_m5rules(const TaskView& train, const M5Params& params = m5rules_defaults());

/// Leaf of `tree` with the largest coverage; ties go to the lower estimated
/// error, then to the leftmost leaf.
std::size_t best_leaf(const RegressionTree& tree);

// ---------------------------------------------------------------------------
// Decision table

/// Equal-width binning fit on the training range of each column; values
/// outside the range fall into the first or last bin.
class EqualWidthBinner {
public:
    EqualWidthBinner() = default;
    EqualWidthBinner(const Matrix& X, std::size_t bins);

    std::size_t bins() const noexcept { return bins_; }
    int bin(std::size_t column, double v) const;

private:
    std::size_t bins_ = 0;
    std::vector<double> lo_, width_;
};

struct DecisionTableParams {
    std::size_t bins = 10;
    std::size_t search_width = 5;  // consecutive non-improving expansions before stopping
};

struct SubsetScore {
    std::vector<std::size_t> features;  // ascending
    double loo_rmse = 0.0;
};

struct TableCell {
    double sum = 0.0;
    std::size_t count = 0;
    double mean() const { return sum / static_cast<double>(count); }
};

class DecisionTableModel final : public Regressor {
public:
    DecisionTableModel(std::vector<std::size_t> features, std::map<std::vector<int>, TableCell> cells,
                       double global_mean, EqualWidthBinner binner, std::vector<std::string> names,
                       std::vector<SubsetScore> trace);

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    std::vector<int> key_for(std::span<const double> x) const;

    const std::vector<std::size_t>& selected_features() const noexcept { return features_; }
    const std::map<std::vector<int>, TableCell>& cells() const noexcept { return cells_; }
    double global_mean() const noexcept { return global_mean_; }
    const std::vector<SubsetScore>& search_trace() const noexcept { return trace_; }

private:
    std::vector<std::size_t> features_;
    std::map<std::vector<int>, TableCell> cells_;
    double global_mean_;
    EqualWidthBinner binner_;
    std::vector<std::string> names_;
    std::vector<SubsetScore> trace_;
};

/// Leave-one-out RMSE of the table keyed on `features`. A held-out row whose
/// cell becomes empty is predicted by the mean of all other rows.
double decision_table_loo_rmse(const std::vector<std::vector<int>>& binned, std::span<const double> y,
                               std::span<const std::size_t> features);

/// Bin index of every (row, column) of X.
std::vector<std::vector<int>> bin_rows(const Matrix& X, const EqualWidthBinner& binner);

/// Table over a fixed feature subset, without search.
DecisionTableModel build_decision_table(const TaskView& train, std::vector<std::size_t> features,
                                        const DecisionTableParams& params = {});

/// Best-first search from the empty subset with add-one and drop-one moves.
/// Ties in score prefer the smaller subset.
DecisionTableModel train_decision_table(const TaskView& train, const DecisionTableParams& params = {});

}  // namespace telemine
