#pragma once

// Regression by discretization: the target is cut into equal-width bins, a
// C4.5-style classification tree predicts bin probabilities, and the
// prediction is their expectation over per-bin representative values.

#include "telemine/dataset.hpp"
#include "telemine/numeric.hpp"
#include "telemine/regressor.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace telemine {

class TargetDiscretizer {
public:
    TargetDiscretizer() = default;
    /// Equal-width bins over [min(y), max(y)]. Throws std::invalid_argument
    /// for fewer than 2 bins or a constant target.
    TargetDiscretizer(std::span<const double> y, std::size_t bins);

    std::size_t bins() const noexcept { return representatives_.size(); }
    const std::vector<double>& edges() const noexcept { return edges_; }

    /// Mean of the training targets in each bin; the bin midpoint when empty.
    const std::vector<double>& representatives() const noexcept { return representatives_; }
    double midpoint(std::size_t b) const { return 0.5 * (edges_[b] + edges_[b + 1]); }

    /// Bin of v; values at or beyond the top edge go to the last bin, values
    /// below the bottom edge to the first.
    std::size_t bin(double v) const;

private:
    std::vector<double> edges_;
    std::vector<double> representatives_;
};

/// Entropy in bits of a class-count vector.
double entropy_bits(std::span<const double> counts);

/// Upper confidence bound on extra errors at a leaf with N instances and e
/// training errors (binomial normal approximation, confidence factor cf).
double c45_added_errors(double N, double e, double cf);

struct GainRatioSplit {
    std::size_t attribute = 0;
    double threshold = 0.0;
    double info_gain = 0.0;  // after the log2(#candidates)/n correction
    double gain_ratio = 0.0;
};

/// Best info-gain threshold on one attribute with at least `min_split` rows
/// per side, corrected by log2(#candidates)/n. nullopt when no candidate
/// exists or the corrected gain is not positive.
std::optional<GainRatioSplit> best_threshold_split(const Matrix& X, std::span<const int> labels,
                                                   std::span<const std::size_t> rows, std::size_t attribute,
                                                   std::size_t num_classes, double min_split);

/// Among attributes with a valid split whose gain reaches the average gain
/// (less 1e-3), the one of highest gain ratio; ties keep the lower attribute.
std::optional<GainRatioSplit> choose_gain_ratio_split(const Matrix& X, std::span<const int> labels,
                                                      std::span<const std::size_t> rows, std::size_t num_classes,
                                                      std::size_t min_instances);

struct ClassTreeParams {
    double confidence = 0.25;
    std::size_t min_instances = 2;
    bool pruning = true;
};

struct ClassNode {
    int attribute = -1;  // internal when >= 0
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> counts;  // training class frequencies

    bool is_leaf() const noexcept { return attribute < 0; }
    double total() const;
};

class ClassTree {
public:
    ClassTree() = default;
    ClassTree(std::vector<ClassNode> nodes, std::size_t num_classes);

    std::size_t num_classes() const noexcept { return num_classes_; }
    const std::vector<ClassNode>& nodes() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t leaf_count() const;

    std::size_t leaf_for(std::span<const double> x) const;

    /// Laplace-smoothed (count + 1)/(n + K) at the leaf reached by x.
    std::vector<double> probabilities(std::span<const double> x) const;

    /// Index of the most probable class at x; ties keep the lower class.
    int classify(std::span<const double> x) const;

private:
    std::vector<ClassNode> nodes_;
    std::size_t num_classes_ = 0;
};

/// Grows a binary gain-ratio tree, collapses subtrees that do not reduce
/// training errors, then applies error-based pruning (no subtree raising).
ClassTree train_class_tree(const Matrix& X, std::span<const int> labels, std::size_t num_classes,
                           const ClassTreeParams& params = {});

enum class DensityMode {
    expected_value,  // Σ P(bin)·mean of bin
    histogram,       // Σ P(bin)·midpoint of bin
};

struct RegByDiscParams {
    std::size_t bins = 10;
    DensityMode mode = DensityMode::expected_value;
    ClassTreeParams tree{};
};

class RegByDiscModel final : public Regressor {
public:
    RegByDiscModel(TargetDiscretizer disc, ClassTree tree, DensityMode mode)
        : disc_(std::move(disc)), tree_(std::move(tree)), mode_(mode) {}

    double predict(std::span<const double> x) const override;
    std::string describe() const override;

    const TargetDiscretizer& discretizer() const noexcept { return disc_; }
    const ClassTree& tree() const noexcept { return tree_; }
    DensityMode mode() const noexcept { return mode_; }

private:
    TargetDiscretizer disc_;
    ClassTree tree_;
    DensityMode mode_;
};

/// Σ probabilities[b]·values[b].
double expected_value(std::span<const double> probabilities, std::span<const double> values);

RegByDiscModel train_reg_by_disc(const TaskView& train, const RegByDiscParams& params = {});

}  // namespace telemine
