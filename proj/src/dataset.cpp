#include "telemine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace telemine {

std::string_view to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::identifier: return "identifier";
        case ColumnKind::demographic: return "demographic";
        case ColumnKind::clock: return "clock";
        case ColumnKind::target_candidate: return "target-candidate";
        case ColumnKind::voice_feature: return "voice-feature";
    }
    return "unknown";
}

namespace {

// Lowercase, drop whitespace and a leading "mdvp:" so that both the UCI
// header and the labels of the published feature table resolve.
std::string name_key(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    constexpr std::string_view prefix = "mdvp:";
    if (key.starts_with(prefix)) key.erase(0, prefix.size());
    return key;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

ColumnSpec bounded(std::string name, ColumnKind kind, double lo, double lo_slack, double hi, double hi_slack) {
    return {std::move(name), kind, lo, hi, lo_slack, hi_slack};
}

ColumnSpec unbounded(std::string name, ColumnKind kind) { return {std::move(name), kind, {}, {}, 0.0, 0.0}; }

}  // namespace

Schema::Schema(std::vector<ColumnSpec> columns) : columns_(std::move(columns)) {
    std::unordered_set<std::string> seen;
    for (const auto& c : columns_)
        if (!seen.insert(name_key(c.name)).second) throw std::invalid_argument("Schema: duplicate column " + c.name);
}

const Schema& Schema::telemonitoring() {
    using K = ColumnKind;
    // Bounds and printed precision follow the published per-feature summary.
    // The UPDRS bounds are the union over its three assessment periods. The
    // first of its two noise-to-tonal rows is NHR, the second HNR.
    static const Schema schema({
        unbounded("subject#", K::identifier),
        unbounded("age", K::demographic),
        unbounded("sex", K::demographic),
        unbounded("test_time", K::clock),
        bounded("motor_UPDRS", K::target_candidate, 5, 0.5, 41, 0.5),
        bounded("total_UPDRS", K::target_candidate, 7, 0.5, 55, 0.5),
        bounded("Jitter(%)", K::voice_feature, 8e-4, 0.5e-4, 0.1, 0.05),
        bounded("Jitter(Abs)", K::voice_feature, 2e-6, 0.5e-6, 4e-4, 0.5e-4),
        bounded("Jitter:RAP", K::voice_feature, 3e-4, 0.5e-4, 0.057, 0.0005),
        bounded("Jitter:PPQ5", K::voice_feature, 4e-4, 0.5e-4, 0.069, 0.0005),
        bounded("Jitter:DDP", K::voice_feature, 10e-4, 0.5e-4, 0.173, 0.0005),
        bounded("Shimmer", K::voice_feature, 0.003, 0.0005, 0.269, 0.0005),
        bounded("Shimmer(dB)", K::voice_feature, 0.026, 0.0005, 2.107, 0.0005),
        bounded("Shimmer:APQ3", K::voice_feature, 0.002, 0.0005, 0.163, 0.0005),
        bounded("Shimmer:APQ5", K::voice_feature, 0.002, 0.0005, 0.167, 0.0005),
        bounded("Shimmer:APQ11", K::voice_feature, 0.003, 0.0005, 0.276, 0.0005),
        unbounded("Shimmer:DDA", K::voice_feature),
        bounded("NHR", K::voice_feature, 3e-4, 0.5e-4, 0.749, 0.0005),
        bounded("HNR", K::voice_feature, 1.659, 0.0005, 37.875, 0.0005),
        bounded("RPDE", K::voice_feature, 0.151, 0.0005, 0.966, 0.0005),
        bounded("DFA", K::voice_feature, 0.514, 0.0005, 0.866, 0.0005),
        bounded("PPE", K::voice_feature, 0.022, 0.0005, 0.732, 0.0005),
    });
    return schema;
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
    std::string key = name_key(name);
    if (key == "subject" || key == "subjectnumber" || key == "subject_number") key = "subject#";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (name_key(columns_[i].name) == key) return i;
    return std::nullopt;
}

std::vector<std::string> Schema::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
}

DataTable::DataTable(Schema schema, Matrix values) : schema_(std::move(schema)), values_(std::move(values)) {
    if (values_.rows() > 0 && values_.cols() != schema_.size())
        throw DatasetError("DataTable: column count does not match schema");
}

DataTable DataTable::select_rows(std::span<const std::size_t> rows) const {
    return DataTable(schema_, values_.select_rows(rows));
}

DataTable load_table(std::istream& source, const Schema& schema) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(source, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw DatasetError("empty file: no header row");

    auto header = split_csv(line);
    if (header.size() != schema.size())
        throw DatasetError("header mismatch: expected " + std::to_string(schema.size()) + " columns, found " +
                           std::to_string(header.size()));
    // position[file column] = schema column
    std::vector<std::size_t> position(header.size());
    std::vector<bool> taken(schema.size(), false);
    for (std::size_t i = 0; i < header.size(); ++i) {
        auto idx = schema.find(header[i]);
        if (!idx) throw DatasetError("header mismatch: unknown column '" + std::string(header[i]) + "'", 0,
                                     std::string(header[i]));
        if (taken[*idx])
            throw DatasetError("header mismatch: duplicate column '" + std::string(header[i]) + "'", 0,
                               schema[*idx].name);
        taken[*idx] = true;
        position[i] = *idx;
    }

    std::vector<double> values;
    std::size_t row = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++row;
        auto cells = split_csv(line);
        if (cells.size() < header.size()) {
            const auto& col = schema[position[cells.size()]].name;
            throw DatasetError("row " + std::to_string(row) + ", column '" + col + "': missing cell", row, col);
        }
        if (cells.size() > header.size())
            throw DatasetError("row " + std::to_string(row) + ": " + std::to_string(cells.size()) +
                                   " cells, expected " + std::to_string(header.size()),
                               row);
        std::vector<double> parsed(schema.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& col = schema[position[i]].name;
            auto cell = cells[i];
            if (cell.empty() || cell == "?")
                throw DatasetError("row " + std::to_string(row) + ", column '" + col + "': missing cell", row, col);
            double v = 0.0;
            auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || end != cell.data() + cell.size())
                throw DatasetError("row " + std::to_string(row) + ", column '" + col + "': non-numeric value '" +
                                       std::string(cell) + "'",
                                   row, col);
            if (!std::isfinite(v))
                throw DatasetError("row " + std::to_string(row) + ", column '" + col + "': non-finite value", row,
                                   col);
            parsed[position[i]] = v;
        }
        values.insert(values.end(), parsed.begin(), parsed.end());
    }
    if (row == 0) throw DatasetError("empty file: header present but no data rows");

    Matrix m(row, schema.size());
    for (std::size_t r = 0; r < row; ++r)
        std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(r * schema.size()), schema.size(), m.row(r).begin());
    return DataTable(schema, std::move(m));
}

DataTable load_table_file(const std::string& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open data file '" + path + "'");
    return load_table(in, schema);
}

void write_table(std::ostream& out, const DataTable& table) {
    const auto& names = table.schema().names();
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        auto row = table.values().row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row[c]);
            (void)ec;
            if (c) out << ',';
            out.write(buf, end - buf);
        }
        out << '\n';
    }
}

std::string RangeWarning::message() const {
    std::ostringstream os;
    os << "row " << row << ", column '" << column << "': value " << value << " outside [" << expected_min << ", "
       << expected_max << "]";
    return os.str();
}

std::vector<RangeWarning> validate_ranges(const DataTable& table) {
    std::vector<RangeWarning> warnings;
    const auto& schema = table.schema();
    for (std::size_t c = 0; c < schema.size(); ++c) {
        const auto& spec = schema[c];
        if (!spec.expected_min || !spec.expected_max) continue;
        const double lo = *spec.expected_min - spec.min_slack;
        const double hi = *spec.expected_max + spec.max_slack;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            double v = table.values()(r, c);
            if (v < lo || v > hi) warnings.push_back({r + 1, spec.name, v, *spec.expected_min, *spec.expected_max});
        }
    }
    return warnings;
}

TaskView TaskView::select_rows(std::span<const std::size_t> rows) const {
    TaskView out;
    out.predictors = predictors.select_rows(rows);
    out.predictor_names = predictor_names;
    out.target.reserve(rows.size());
    for (auto r : rows) out.target.push_back(target[r]);
    out.target_name = target_name;
    out.excluded = excluded;
    return out;
}

TaskView make_task(const DataTable& table, std::string_view target, const std::vector<std::string>& excluded) {
    const auto& schema = table.schema();
    auto t = schema.find(target);
    if (!t) throw DatasetError("unknown target column '" + std::string(target) + "'");
    if (schema[*t].kind != ColumnKind::target_candidate)
        throw DatasetError("'" + schema[*t].name + "' is not a target candidate");

    std::vector<bool> drop(schema.size(), false);
    drop[*t] = true;
    std::vector<std::string> excluded_names;
    for (const auto& name : excluded) {
        auto e = schema.find(name);
        if (!e) throw DatasetError("excluded column '" + name + "' is not in the schema");
        if (*e == *t) throw DatasetError("excluded columns must not contain the target '" + schema[*t].name + "'");
        if (!drop[*e]) excluded_names.push_back(schema[*e].name);
        drop[*e] = true;
    }

    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < schema.size(); ++c)
        if (!drop[c]) keep.push_back(c);

    TaskView view;
    view.target_name = schema[*t].name;
    view.excluded = std::move(excluded_names);
    view.predictor_names.reserve(keep.size());
    for (auto c : keep) view.predictor_names.push_back(schema[c].name);
    view.predictors = Matrix(table.row_count(), keep.size());
    view.target.resize(table.row_count());
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        for (std::size_t j = 0; j < keep.size(); ++j) view.predictors(r, j) = table.values()(r, keep[j]);
        view.target[r] = table.values()(r, *t);
    }
    return view;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("split: train fraction must lie in (0, 1)");
    const auto n_train = static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
    if (n_train < 1 || n_train >= n)
        throw std::invalid_argument("split: partition of " + std::to_string(n) + " rows has an empty side");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    RngStream rng(spec.seed);
    rng.shuffle(std::span<std::size_t>(order));

    std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

std::pair<TaskView, TaskView> split(const TaskView& task, const SplitSpec& spec) {
    auto [train, test] = split_indices(task.size(), spec);
    return {task.select_rows(train), task.select_rows(test)};
}

std::pair<DataTable, DataTable> split(const DataTable& table, const SplitSpec& spec) {
    auto [train, test] = split_indices(table.row_count(), spec);
    return {table.select_rows(train), table.select_rows(test)};
}

std::vector<ColumnStats> normalization_stats(const TaskView& train) {
    if (train.size() == 0) throw std::invalid_argument("normalization_stats: empty training view");
    std::vector<ColumnStats> out(train.dims());
    for (std::size_t c = 0; c < train.dims(); ++c) {
        auto col = train.predictors.column(c);
        auto s = descriptive_stats(col);
        out[c] = {s.min, s.max, s.mean, s.stddev, s.max == s.min};
    }
    return out;
}

}  // namespace telemine
