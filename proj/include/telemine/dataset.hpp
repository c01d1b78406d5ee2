#pragma once

// Loading, validation, projection and splitting of the Parkinson's
// telemonitoring table (22 numeric columns, one row per voice recording).

#include "telemine/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace telemine {

enum class ColumnKind { identifier, demographic, clock, target_candidate, voice_feature };

std::string_view to_string(ColumnKind kind);

struct ColumnSpec {
    std::string name;
    ColumnKind kind;
    // Reference range of the published feature summary. Each slack is half a
    // unit in the last printed digit of its bound, so a value that rounds
    // into the printed range counts as inside it.
    std::optional<double> expected_min;
    std::optional<double> expected_max;
    double min_slack = 0.0;
    double max_slack = 0.0;
};

class Schema {
public:
    explicit Schema(std::vector<ColumnSpec> columns);

    /// The 22-column layout of the UCI `parkinsons_updrs.data` file.
    static const Schema& telemonitoring();

    std::size_t size() const noexcept { return columns_.size(); }
    const ColumnSpec& operator[](std::size_t i) const { return columns_[i]; }
    const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }

    /// Index of a column by its canonical name or a recognised alias
    /// ("MDVP:Jitter(%)", "subject", case and whitespace ignored).
    std::optional<std::size_t> find(std::string_view name) const;

    std::vector<std::string> names() const;

private:
    std::vector<ColumnSpec> columns_;
};

/// Input error carrying the 1-based data row (0 for the header) and the
/// column name when one applies.
class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& what, std::size_t row = 0, std::string column = {})
        : std::runtime_error(what), row_(row), column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

class DataTable {
public:
    DataTable(Schema schema, Matrix values);

    const Schema& schema() const noexcept { return schema_; }
    const Matrix& values() const noexcept { return values_; }
    std::size_t row_count() const noexcept { return values_.rows(); }

    DataTable select_rows(std::span<const std::size_t> rows) const;

    friend bool operator==(const DataTable& a, const DataTable& b) {
        return a.schema_.names() == b.schema_.names() && a.values_ == b.values_;
    }

private:
    Schema schema_;
    Matrix values_;
};

/// Parses comma-separated text with a header row. Header columns may come in
/// any order and are reordered to schema order.
DataTable load_table(std::istream& source, const Schema& schema = Schema::telemonitoring());
DataTable load_table_file(const std::string& path, const Schema& schema = Schema::telemonitoring());

/// Writes the table back as CSV with round-trip precision.
void write_table(std::ostream& out, const DataTable& table);

struct RangeWarning {
    std::size_t row;  // 1-based data row
    std::string column;
    double value;
    double expected_min;
    double expected_max;

    std::string message() const;
};

std::vector<RangeWarning> validate_ranges(const DataTable& table);

struct TaskView {
    Matrix predictors;
    std::vector<std::string> predictor_names;
    std::vector<double> target;
    std::string target_name;
    std::vector<std::string> excluded;

    std::size_t size() const noexcept { return target.size(); }
    std::size_t dims() const noexcept { return predictors.cols(); }

    TaskView select_rows(std::span<const std::size_t> rows) const;
};

TaskView make_task(const DataTable& table, std::string_view target,
                   const std::vector<std::string>& excluded = {});

struct SplitSpec {
    std::uint64_t seed = 1;
    double train_fraction = 0.75;
};

/// Seeded uniform shuffle of 0..n-1; the first floor(fraction·n) indices form
/// the training side. Both sides are returned in ascending row order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                           const SplitSpec& spec);

std::pair<TaskView, TaskView> split(const TaskView& task, const SplitSpec& spec);
std::pair<DataTable, DataTable> split(const DataTable& table, const SplitSpec& spec);

struct ColumnStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double stddev = 0.0;  // sample (n−1)
    bool constant = false;
};

std::vector<ColumnStats> normalization_stats(const TaskView& train);

}  // namespace telemine
