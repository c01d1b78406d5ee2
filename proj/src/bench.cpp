#include "telemine/bench.hpp"

#include "telemine/functions.hpp"
#include "telemine/lazy.hpp"
#include "telemine/meta.hpp"
#include "telemine/rules.hpp"
#include "telemine/trees.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace telemine {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string squash(std::string_view s) {
    std::string out;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(std::string(key) + ": expected a number, got '" + s + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + s + "'");
    return v;
}

long long parse_int(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(std::string(key) + ": expected an integer, got '" + s + "'");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    const std::string s = lower(trim(text));
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(std::string(key) + ": expected true or false, got '" + s + "'");
}

// Reads learner parameters by name from the override map.
class ParamReader {
public:
    ParamReader(const std::string& learner, const std::map<std::string, std::string>& values)
        : learner_(learner), values_(values) {}

    template <typename T>
    void read(const std::string& name, T& field) const {
        auto it = values_.find(name);
        if (it == values_.end()) return;
        const std::string key = learner_ + "." + name;
        if constexpr (std::is_same_v<T, std::string>) {
            field = lower(trim(it->second));
        } else if constexpr (std::is_same_v<T, bool>) {
            field = parse_bool(key, it->second);
        } else if constexpr (std::is_same_v<T, double>) {
            field = parse_double(key, it->second);
        } else if constexpr (std::is_same_v<T, int>) {
            field = static_cast<int>(parse_int(key, it->second));
        } else {
            field = static_cast<T>(parse_uint(key, it->second));
        }
    }

private:
    const std::string& learner_;
    const std::map<std::string, std::string>& values_;
};

struct RegistryEntry {
    LearnerInfo info;
    std::function<std::unique_ptr<Regressor>(const TaskView&, const ParamReader&, std::uint64_t)> train;
};

template <typename M>
std::unique_ptr<Regressor> boxed(M&& model) {
    return std::make_unique<std::decay_t<M>>(std::forward<M>(model));
}

M5Params read_m5(const ParamReader& p, M5Params m) {
    p.read("min_instances", m.min_instances);
    p.read("smoothing", m.smoothing);
    p.read("pruning", m.pruning);
    p.read("sd_fraction", m.sd_fraction);
    p.read("smoothing_constant", m.smoothing_constant);
    return m;
}

const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> entries = [] {
        std::vector<RegistryEntry> e;
        const std::vector<std::string> m5_params{"min_instances", "smoothing", "pruning", "sd_fraction",
                                                 "smoothing_constant"};
        e.push_back({{"slr", "Simple Linear Regression (SLR)", "Functions", {}},
                     [](const TaskView& t, const ParamReader&, std::uint64_t) { return boxed(train_slr(t)); }});
        e.push_back({{"mlp", "Multi-Layer Perceptron (MLP)", "Functions",
                      {"hidden", "epochs", "learning_rate", "momentum", "init_range"}},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t seed) {
                         MlpParams m;
                         p.read("hidden", m.hidden);
                         p.read("epochs", m.epochs);
                         p.read("learning_rate", m.learning_rate);
                         p.read("momentum", m.momentum);
                         p.read("init_range", m.init_range);
                         RngStream rng(seed);
                         return boxed(train_mlp(t, m, rng));
                     }});
        e.push_back({{"smoreg", "SMOreg", "Functions",
                      {"c", "epsilon", "tolerance", "exponent", "inhomogeneous", "max_updates", "scale_target",
                       "cache_mb"}},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t) {
                         SmoregParams m;
                         p.read("c", m.C);
                         p.read("epsilon", m.epsilon);
                         p.read("tolerance", m.tolerance);
                         p.read("exponent", m.kernel.exponent);
                         p.read("inhomogeneous", m.kernel.inhomogeneous);
                         p.read("max_updates", m.max_updates);
                         p.read("scale_target", m.scale_target);
                         p.read("cache_mb", m.cache_megabytes);
                         return boxed(train_smoreg(t, m));
                     }});
        e.push_back({{"m5rules", "M5Rules", "Rules", m5_params},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t) {
                         return boxed(train_m5rules(t, read_m5(p, m5rules_defaults())));
                     }});
        e.push_back({{"decisiontable", "Decision Table", "Rules", {"bins", "search_width"}},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t) {
                         DecisionTableParams m;
                         p.read("bins", m.bins);
                         p.read("search_width", m.search_width);
                         return boxed(train_decision_table(t, m));
                     }});
        e.push_back({{"m5p", "M5P", "Trees", m5_params},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t) {
                         return boxed(train_m5p(t, read_m5(p, M5Params{})));
                     }});
        e.push_back({{"reptree", "REPTree", "Trees",
                      {"max_depth", "min_variance_proportion", "min_instances", "pruning_folds", "pruning"}},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t seed) {
                         RepTreeParams m;
                         p.read("max_depth", m.max_depth);
                         p.read("min_variance_proportion", m.min_variance_proportion);
                         p.read("min_instances", m.min_instances);
                         p.read("pruning_folds", m.pruning_folds);
                         p.read("pruning", m.pruning);
                         RngStream rng(seed);
                         return boxed(train_reptree(t, m, rng));
                     }});
        e.push_back({{"decisionstump", "Decision Stump", "Trees", {}},
                     [](const TaskView& t, const ParamReader&, std::uint64_t) {
                         return boxed(train_decision_stump(t));
                     }});
        e.push_back({{"ibk", "IBk", "Lazy", {}},
                     [](const TaskView& t, const ParamReader&, std::uint64_t) { return boxed(train_ibk(t)); }});
        e.push_back({{"lwl", "LWL", "Lazy", {}},
                     [](const TaskView& t, const ParamReader&, std::uint64_t) { return boxed(train_lwl(t)); }});
        e.push_back({{"regbydisc", "Regression By Discretization", "Meta",
                      {"bins", "mode", "confidence", "min_instances", "pruning"}},
                     [](const TaskView& t, const ParamReader& p, std::uint64_t) {
                         RegByDiscParams m;
                         p.read("bins", m.bins);
                         p.read("confidence", m.tree.confidence);
                         p.read("min_instances", m.tree.min_instances);
                         p.read("pruning", m.tree.pruning);
                         std::string mode = "expected";
                         p.read("mode", mode);
                         if (mode == "histogram")
                             m.mode = DensityMode::histogram;
                         else if (mode != "expected")
                             throw ConfigError("regbydisc.mode: expected 'expected' or 'histogram'");
                         return boxed(train_reg_by_disc(t, m));
                     }});
        return e;
    }();
    return entries;
}

const RegistryEntry& entry_for(const std::string& key) {
    for (const auto& e : registry())
        if (e.info.key == key) return e;
    throw ConfigError("unknown learner '" + key + "'");
}

// Overrides for one learner with the "learner." prefix stripped.
std::map<std::string, std::string> overrides_for(const ExperimentConfig& config, const std::string& key) {
    std::map<std::string, std::string> out;
    const std::string prefix = key + ".";
    for (const auto& [k, v] : config.overrides)
        if (k.starts_with(prefix)) out[k.substr(prefix.size())] = v;
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    const std::string s = lower(trim(name));
    if (s == "text") return ReportFormat::text;
    if (s == "markdown" || s == "md") return ReportFormat::markdown;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    if (s == "chart") return ReportFormat::chart;
    throw ConfigError("unknown report format '" + std::string(name) + "' (text, markdown, csv, json, chart)");
}

std::string_view to_string(ReportFormat f) {
    switch (f) {
        case ReportFormat::text: return "text";
        case ReportFormat::markdown: return "markdown";
        case ReportFormat::csv: return "csv";
        case ReportFormat::json: return "json";
        case ReportFormat::chart: return "chart";
    }
    return "text";
}

const std::vector<LearnerInfo>& learner_registry() {
    static const std::vector<LearnerInfo> infos = [] {
        std::vector<LearnerInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

std::vector<std::string> default_learner_keys() {
    std::vector<std::string> keys;
    for (const auto& info : learner_registry()) keys.push_back(info.key);
    return keys;
}

const LearnerInfo& find_learner(std::string_view name) {
    const std::string want = squash(name);
    for (const auto& info : learner_registry()) {
        if (want == info.key || want == squash(info.display_name)) return info;
    }
    if (want == "simplelinearregression") return find_learner("slr");
    if (want == "multilayerperceptron") return find_learner("mlp");
    if (want == "regressionbydiscretization") return find_learner("regbydisc");
    throw ConfigError("unknown learner '" + std::string(name) + "'");
}

ExperimentConfig::ExperimentConfig() : learners(default_learner_keys()) {}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "data = " << data_path << '\n';
    os << "target = " << target << '\n';
    for (const auto& e : excluded) os << "exclude = " << e << '\n';
    os << "seed = " << seed << '\n';
    os << "train_fraction = " << format_double(train_fraction) << '\n';
    os << "learners = ";
    for (std::size_t i = 0; i < learners.size(); ++i) os << (i ? "," : "") << learners[i];
    os << '\n';
    os << "format = " << to_string(format) << '\n';
    os << "out = " << out_path << '\n';
    os << "baseline = " << (baseline_test_mean ? "test" : "train") << '\n';
    os << "timings = " << (timings ? "true" : "false") << '\n';
    os << "threads = " << threads << '\n';
    for (const auto& [k, v] : overrides) os << "set = " << k << '=' << v << '\n';
    return os.str();
}

void add_override(ExperimentConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
        throw ConfigError("override '" + std::string(assignment) + "' must look like LEARNER.PARAM=VALUE");
    const LearnerInfo& info = find_learner(trim(assignment.substr(0, dot)));
    const std::string param = lower(trim(assignment.substr(dot + 1, eq - dot - 1)));
    if (std::find(info.parameters.begin(), info.parameters.end(), param) == info.parameters.end()) {
        std::string known;
        for (const auto& p : info.parameters) known += (known.empty() ? "" : ", ") + p;
        throw ConfigError("learner '" + info.key + "' has no parameter '" + param + "'" +
                          (known.empty() ? std::string(" (it takes none)") : " (known: " + known + ")"));
    }
    config.overrides[info.key + "." + param] = trim(assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    c.overrides.clear();
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = lower(trim(t.substr(0, eq)));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "data")
            c.data_path = value;
        else if (key == "target")
            c.target = value;
        else if (key == "exclude")
            c.excluded.push_back(value);
        else if (key == "seed")
            c.seed = parse_uint(key, value);
        else if (key == "train_fraction")
            c.train_fraction = parse_double(key, value);
        else if (key == "learners") {
            c.learners.clear();
            for (const auto& name : split_list(value)) c.learners.push_back(find_learner(name).key);
        } else if (key == "format")
            c.format = parse_report_format(value);
        else if (key == "out")
            c.out_path = value;
        else if (key == "baseline") {
            const std::string b = lower(value);
            if (b != "train" && b != "test") throw ConfigError("baseline: expected train or test");
            c.baseline_test_mean = b == "test";
        } else if (key == "timings")
            c.timings = parse_bool(key, value);
        else if (key == "threads")
            c.threads = static_cast<unsigned>(parse_uint(key, value));
        else if (key == "set")
            add_override(c, value);
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const ExperimentConfig& config) {
    if (config.learners.empty()) throw ConfigError("no learners selected");
    std::set<std::string> seen;
    for (const auto& l : config.learners) {
        entry_for(l);
        if (!seen.insert(l).second) throw ConfigError("learner '" + l + "' selected twice");
    }
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw ConfigError("train_fraction must lie strictly between 0 and 1");
    for (const auto& [k, v] : config.overrides) {
        ExperimentConfig scratch;
        add_override(scratch, k + "=" + v);
        const std::string param = k.substr(k.find('.') + 1);
        static const std::set<std::string> unsigned_params{"hidden", "epochs", "max_updates", "cache_mb",
                                                           "min_instances", "bins", "search_width", "pruning_folds"};
        static const std::set<std::string> bool_params{"smoothing", "pruning", "inhomogeneous", "scale_target"};
        if (param == "mode") {
            const std::string m = lower(v);
            if (m != "expected" && m != "histogram") throw ConfigError(k + ": expected 'expected' or 'histogram'");
        } else if (bool_params.count(param)) {
            parse_bool(k, v);
        } else if (unsigned_params.count(param)) {
            parse_uint(k, v);
        } else if (param == "max_depth" || param == "exponent") {
            parse_int(k, v);
        } else {
            parse_double(k, v);
        }
    }
}

std::unique_ptr<Regressor> train_learner(const std::string& key, const TaskView& train,
                                         const std::map<std::string, std::string>& params, std::uint64_t seed) {
    const auto& e = entry_for(key);
    ParamReader reader(e.info.key, params);
    return e.train(train, reader, seed);
}

bool BenchmarkResult::all_succeeded() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const LearnerOutcome& o) { return o.report.has_value(); });
}

BenchmarkResult run_benchmark(const ExperimentConfig& config) {
    validate_config(config);
    const DataTable table = load_table_file(config.data_path);
    return run_benchmark(config, table);
}

BenchmarkResult run_benchmark(const ExperimentConfig& config, const DataTable& table) {
    validate_config(config);
    BenchmarkResult result;
    result.config = config;
    for (const auto& w : validate_ranges(table)) result.warnings.push_back(w.message());

    const TaskView task = make_task(table, config.target, config.excluded);
    const auto [train, test] = split(task, SplitSpec{config.seed, config.train_fraction});
    result.n_train = train.size();
    result.n_test = test.size();
    const double reference = config.baseline_test_mean ? mean(test.target) : mean(train.target);

    // Registry order, independent of the order learners were listed in.
    std::vector<std::string> keys;
    for (const auto& info : learner_registry())
        if (std::find(config.learners.begin(), config.learners.end(), info.key) != config.learners.end())
            keys.push_back(info.key);
    result.outcomes.resize(keys.size());

    auto run_one = [&](std::size_t i) {
        auto& out = result.outcomes[i];
        out.learner = entry_for(keys[i]).info;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto model = train_learner(keys[i], train, overrides_for(config, keys[i]),
                                             derive_seed(config.seed, keys[i]));
            const auto pred = model->predict_all(test.predictors);
            for (double p : pred)
                if (!std::isfinite(p)) throw TrainingError("non-finite prediction");
            out.report = evaluate(pred, test.target, BaselinePredictor{reference}, out.learner.display_name);
        } catch (const std::exception& ex) {
            out.error = ex.what();
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(keys.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < keys.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < keys.size(); i = next++) run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    return result;
}

namespace {

const char* const kHeaders[] = {"Category",
                                "Classifier",
                                "Correlation coefficient",
                                "Mean absolute error",
                                "Root mean squared error",
                                "Relative absolute error (%)",
                                "Root relative squared error (%)"};

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string cc_text(const EvaluationReport& r) {
    return r.correlation_coefficient ? fixed4(*r.correlation_coefficient) : "n/a";
}

// Category shown only on the first row of each group.
std::vector<std::vector<std::string>> table_rows(const BenchmarkResult& result, bool repeat_category) {
    std::vector<std::vector<std::string>> rows;
    std::string last;
    for (const auto& o : result.outcomes) {
        if (!o.report) continue;
        const auto& r = *o.report;
        std::vector<std::string> row{(repeat_category || o.learner.category != last) ? o.learner.category : "",
                                     o.learner.display_name,
                                     cc_text(r),
                                     fixed4(r.mean_absolute_error),
                                     fixed4(r.root_mean_squared_error),
                                     fixed4(r.relative_absolute_error_pct),
                                     fixed4(r.root_relative_squared_error_pct)};
        if (result.config.timings) row.push_back(fixed4(o.seconds));
        last = o.learner.category;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> headers(const BenchmarkResult& result) {
    std::vector<std::string> h(std::begin(kHeaders), std::end(kHeaders));
    if (result.config.timings) h.push_back("Seconds");
    return h;
}

std::string summary_line(const BenchmarkResult& result) {
    std::ostringstream os;
    os << "target " << result.config.target << ", seed " << result.config.seed << ", train " << result.n_train
       << " / test " << result.n_test;
    return os.str();
}

void failures(std::ostream& os, const BenchmarkResult& result, std::string_view prefix) {
    for (const auto& o : result.outcomes)
        if (!o.report) os << prefix << "FAILED " << o.learner.display_name << ": " << o.error << '\n';
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::string render_report(const BenchmarkResult& result, ReportFormat format) {
    if (result.outcomes.empty()) throw ConfigError("render_report: empty result");
    std::ostringstream os;
    switch (format) {
        case ReportFormat::text: {
            const auto h = headers(result);
            const auto rows = table_rows(result, false);
            std::vector<std::size_t> width(h.size());
            for (std::size_t c = 0; c < h.size(); ++c) {
                width[c] = h[c].size();
                for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
            }
            os << summary_line(result) << "\n\n";
            auto line = [&](const std::vector<std::string>& cells) {
                std::string s;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    const bool left = c < 2;
                    const std::string pad(width[c] - cells[c].size(), ' ');
                    s += (c ? "  " : "") + (left ? cells[c] + pad : pad + cells[c]);
                }
                while (!s.empty() && s.back() == ' ') s.pop_back();
                os << s << '\n';
            };
            line(h);
            std::size_t total = 0;
            for (auto w : width) total += w;
            os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
            for (const auto& r : rows) line(r);
            if (!result.all_succeeded()) os << '\n';
            failures(os, result, "");
            break;
        }
        case ReportFormat::markdown: {
            const auto h = headers(result);
            os << "<!-- " << summary_line(result) << " -->\n\n";
            os << '|';
            for (const auto& c : h) os << ' ' << c << " |";
            os << "\n|";
            for (std::size_t c = 0; c < h.size(); ++c) os << (c < 2 ? " --- |" : " ---: |");
            os << '\n';
            for (const auto& r : table_rows(result, false)) {
                os << '|';
                for (const auto& c : r) os << ' ' << c << " |";
                os << '\n';
            }
            if (!result.all_succeeded()) os << '\n';
            failures(os, result, "- ");
            break;
        }
        case ReportFormat::csv: {
            os << "category,classifier,correlation_coefficient,mean_absolute_error,root_mean_squared_error,"
                  "relative_absolute_error_pct,root_relative_squared_error_pct,n_test"
               << (result.config.timings ? ",seconds" : "") << ",status\n";
            for (const auto& o : result.outcomes) {
                os << csv_field(o.learner.category) << ',' << csv_field(o.learner.display_name) << ',';
                if (o.report) {
                    const auto& r = *o.report;
                    os << (r.correlation_coefficient ? format_double(*r.correlation_coefficient) : "") << ','
                       << format_double(r.mean_absolute_error) << ',' << format_double(r.root_mean_squared_error)
                       << ',' << format_double(r.relative_absolute_error_pct) << ','
                       << format_double(r.root_relative_squared_error_pct) << ',' << r.n_test;
                } else {
                    os << ",,,,,";
                }
                if (result.config.timings) os << ',' << format_double(o.seconds);
                os << ',' << (o.report ? "ok" : csv_field("failed: " + o.error)) << '\n';
            }
            break;
        }
        case ReportFormat::json: {
            nlohmann::ordered_json j;
            j["target"] = result.config.target;
            j["seed"] = result.config.seed;
            j["train_fraction"] = result.config.train_fraction;
            j["excluded"] = result.config.excluded;
            j["baseline"] = result.config.baseline_test_mean ? "test" : "train";
            j["n_train"] = result.n_train;
            j["n_test"] = result.n_test;
            j["range_warnings"] = result.warnings.size();
            j["rows"] = nlohmann::ordered_json::array();
            j["failures"] = nlohmann::ordered_json::array();
            for (const auto& o : result.outcomes) {
                if (!o.report) {
                    j["failures"].push_back({{"classifier", o.learner.display_name}, {"error", o.error}});
                    continue;
                }
                const auto& r = *o.report;
                nlohmann::ordered_json row;
                row["category"] = o.learner.category;
                row["classifier"] = o.learner.display_name;
                row["correlation_coefficient"] =
                    r.correlation_coefficient ? nlohmann::ordered_json(*r.correlation_coefficient) : nullptr;
                row["mean_absolute_error"] = r.mean_absolute_error;
                row["root_mean_squared_error"] = r.root_mean_squared_error;
                row["relative_absolute_error_pct"] = r.relative_absolute_error_pct;
                row["root_relative_squared_error_pct"] = r.root_relative_squared_error_pct;
                row["n_test"] = r.n_test;
                if (result.config.timings) row["seconds"] = o.seconds;
                j["rows"].push_back(std::move(row));
            }
            os << j.dump(2) << '\n';
            break;
        }
        case ReportFormat::chart: {
            os << "# correlation coefficient\nclassifier,correlation_coefficient\n";
            for (const auto& o : result.outcomes)
                if (o.report)
                    os << csv_field(o.learner.display_name) << ','
                       << (o.report->correlation_coefficient ? fixed4(*o.report->correlation_coefficient) : "") << '\n';
            os << "\n# relative errors\nclassifier,relative_absolute_error_pct,root_relative_squared_error_pct\n";
            for (const auto& o : result.outcomes)
                if (o.report)
                    os << csv_field(o.learner.display_name) << ',' << fixed4(o.report->relative_absolute_error_pct)
                       << ',' << fixed4(o.report->root_relative_squared_error_pct) << '\n';
            failures(os, result, "# ");
            break;
        }
    }
    return os.str();
}

}  // namespace telemine
