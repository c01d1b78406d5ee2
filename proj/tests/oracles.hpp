#pragma once

// Exhaustive reference implementations. Each enumerates every candidate
// from scratch (no prefix sums, no presorting) and applies the documented
// tie-breaks with an explicit tolerance.

#include "telemine/meta.hpp"
#include "telemine/numeric.hpp"
#include "telemine/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using telemine::Matrix;

inline double pop_var(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

inline std::vector<double> thresholds(const Matrix& X, std::span<const std::size_t> rows, std::size_t a) {
    std::set<double> values;
    for (auto r : rows) values.insert(X(r, a));
    std::vector<double> v(values.begin(), values.end()), out;
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i - 1] + (v[i] - v[i - 1]) / 2);
    return out;
}

struct Split {
    std::size_t attribute = 0;
    double threshold = 0;
    double score = 0;
};

inline std::optional<Split> best_split(const Matrix& X, std::span<const double> y, std::span<const std::size_t> rows,
                                       std::size_t a, telemine::SplitCriterion crit, std::size_t min_leaf) {
    auto f = [&](const std::vector<double>& v) {
        return crit == telemine::SplitCriterion::sd_reduction ? std::sqrt(pop_var(v)) : pop_var(v);
    };
    std::vector<double> all;
    for (auto r : rows) all.push_back(y[r]);
    const double parent = f(all), n = static_cast<double>(rows.size());
    std::optional<Split> best;
    for (double t : thresholds(X, rows, a)) {
        std::vector<double> l, r;
        for (auto row : rows) (X(row, a) <= t ? l : r).push_back(y[row]);
        if (l.size() < min_leaf || r.size() < min_leaf) continue;
        const double gain = parent - static_cast<double>(l.size()) / n * f(l) - static_cast<double>(r.size()) / n * f(r);
        if (!best || gain > best->score + 1e-10 * std::max(parent, 1e-300)) best = Split{a, t, gain};
    }
    return best;
}

struct Stump {
    bool has_split = false;
    std::size_t attribute = 0;
    double threshold = 0;
};

inline Stump stump(const Matrix& X, std::span<const double> y) {
    std::vector<std::size_t> rows(X.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    auto sse = [](const std::vector<double>& v) { return pop_var(v) * static_cast<double>(v.size()); };
    const double total = sse(std::vector<double>(y.begin(), y.end()));
    Stump best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < X.cols(); ++a)
        for (double t : thresholds(X, rows, a)) {
            std::vector<double> l, r;
            for (auto row : rows) (X(row, a) <= t ? l : r).push_back(y[row]);
            const double s = sse(l) + sse(r);
            if (s < best_sse - 1e-10 * total) {
                best_sse = s;
                best = {true, a, t};
            }
        }
    if (!(best_sse < total * (1 - 1e-9))) best.has_split = false;
    return best;
}

inline double entropy(const std::vector<int>& labels, std::size_t k) {
    std::vector<double> c(k, 0);
    for (int l : labels) c[static_cast<std::size_t>(l)] += 1;
    double h = 0, n = static_cast<double>(labels.size());
    for (double v : c)
        if (v > 0) h -= v / n * std::log2(v / n);
    return h;
}

/// Per-attribute best info gain with the log2(#candidates)/n correction.
/// Then the highest gain ratio among attributes at or above the average gain.
inline std::optional<Split> gain_ratio(const Matrix& X, std::span<const int> labels, std::size_t k,
                                       std::size_t min_instances) {
    const std::size_t n = X.rows();
    double min_split = 0.1 * static_cast<double>(n) / static_cast<double>(k);
    if (min_split <= static_cast<double>(min_instances))
        min_split = static_cast<double>(min_instances);
    else if (min_split > 25.0)
        min_split = 25.0;
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    const double parent = entropy(std::vector<int>(labels.begin(), labels.end()), k);

    struct Cand {
        std::size_t a;
        double t, gain, ratio;
    };
    std::vector<Cand> valid;
    for (std::size_t a = 0; a < X.cols(); ++a) {
        std::size_t count = 0;
        std::optional<Cand> best;
        for (double t : thresholds(X, rows, a)) {
            std::vector<int> l, r;
            for (auto row : rows) (X(row, a) <= t ? l : r).push_back(labels[row]);
            if (static_cast<double>(l.size()) < min_split || static_cast<double>(r.size()) < min_split) continue;
            ++count;
            const double nl = static_cast<double>(l.size()), nr = static_cast<double>(r.size()),
                         nn = static_cast<double>(n);
            const double gain = parent - nl / nn * entropy(l, k) - nr / nn * entropy(r, k);
            const double split_info = -(nl / nn) * std::log2(nl / nn) - (nr / nn) * std::log2(nr / nn);
            if (!best || gain > best->gain + 1e-10) best = Cand{a, t, gain, split_info};
        }
        if (!best) continue;
        best->gain -= std::log2(static_cast<double>(count)) / static_cast<double>(n);
        if (best->gain <= 0) continue;
        best->ratio = best->gain / best->ratio;
        valid.push_back(*best);
    }
    if (valid.empty()) return std::nullopt;
    double avg = 0;
    for (const auto& c : valid) avg += c.gain;
    avg /= static_cast<double>(valid.size());
    std::optional<Split> out;
    double best_ratio = -1;
    for (const auto& c : valid)
        if (c.gain >= avg - 1e-3 && c.ratio > best_ratio + 1e-10) {
            best_ratio = c.ratio;
            out = Split{c.a, c.t, c.ratio};
        }
    return out;
}

inline double slr_sse(const Matrix& X, std::span<const double> y, std::size_t a) {
    const double n = static_cast<double>(y.size());
    double mx = 0, my = 0;
    for (std::size_t r = 0; r < y.size(); ++r) {
        mx += X(r, a);
        my += y[r];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t r = 0; r < y.size(); ++r) {
        sxy += (X(r, a) - mx) * (y[r] - my);
        sxx += (X(r, a) - mx) * (X(r, a) - mx);
    }
    const double b = sxx > 0 ? sxy / sxx : 0.0, alpha = my - b * mx;
    double sse = 0;
    for (std::size_t r = 0; r < y.size(); ++r) sse += std::pow(y[r] - alpha - b * X(r, a), 2);
    return sse;
}

/// Lowest-index non-constant attribute of minimum SSE; nullopt if all constant.
inline std::optional<std::size_t> slr_attribute(const Matrix& X, std::span<const double> y) {
    double my = 0, sst = 0;
    for (double v : y) my += v;
    my /= static_cast<double>(y.size());
    for (double v : y) sst += (v - my) * (v - my);
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> arg;
    for (std::size_t a = 0; a < X.cols(); ++a) {
        bool constant = true;
        for (std::size_t r = 1; r < X.rows(); ++r) constant = constant && X(r, a) == X(0, a);
        if (constant) continue;
        const double s = slr_sse(X, y, a);
        if (s < best - 1e-10 * sst) {
            best = s;
            arg = a;
        }
    }
    return arg;
}

}  // namespace oracle
