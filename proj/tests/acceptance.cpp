// Acceptance checks. One PASS/FAIL/SKIP line per criterion.
//
//   acceptance synthetic       criteria that need no external data
//   acceptance dataset PATH    criteria on the telemonitoring file; exits 77
//                              when the file is absent

#include "oracles.hpp"
#include "support.hpp"

#include "telemine/bench.hpp"
#include "telemine/dataset.hpp"
#include "telemine/functions.hpp"
#include "telemine/lazy.hpp"
#include "telemine/meta.hpp"
#include "telemine/metrics.hpp"
#include "telemine/rules.hpp"
#include "telemine/trees.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <string>
#include <vector>

using namespace telemine;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

void skip(const char* id, const std::string& why) { std::printf("%s SKIP  %s\n", id, why.c_str()); }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<std::size_t> iota_rows(std::size_t n) {
    std::vector<std::size_t> r(n);
    std::iota(r.begin(), r.end(), std::size_t{0});
    return r;
}

void ac1() {
    const std::vector<double> a{1, 2, 3};
    bool ok = true;
    auto r = evaluate(std::vector<double>{2, 2, 2}, a, {2.0});
    ok = ok && near(r.mean_absolute_error, 0.6667, 1e-4) && near(r.root_mean_squared_error, 0.8165, 1e-4) &&
         near(r.relative_absolute_error_pct, 100, 1e-4) && near(r.root_relative_squared_error_pct, 100, 1e-4);
    r = evaluate(std::vector<double>{1, 2, 4}, a, {2.0});
    ok = ok && near(r.mean_absolute_error, 0.3333, 1e-4) && near(r.root_mean_squared_error, 0.5774, 1e-4) &&
         near(r.relative_absolute_error_pct, 50, 1e-4) && near(r.root_relative_squared_error_pct, 70.7107, 1e-4) &&
         r.correlation_coefficient && near(*r.correlation_coefficient, 0.9820, 1e-4);
    r = evaluate(a, a, {2.0});
    ok = ok && r.mean_absolute_error == 0 && r.root_mean_squared_error == 0 && r.relative_absolute_error_pct == 0 &&
         r.root_relative_squared_error_pct == 0;
    report("AC1", ok, "metric hand examples");
}

void ac4() {
    RngStream rng(20240501);
    std::size_t split_ok = 0, stump_ok = 0, gain_ok = 0, slr_ok = 0;
    const std::size_t trials = 250;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 2 + rng.below(11), d = 1 + rng.below(3);
        const Matrix X = testing::grid_matrix(n, d, rng, 5);
        std::vector<double> y(n);
        for (auto& v : y) v = static_cast<double>(rng.below(6));
        const auto rows = iota_rows(n);

        bool same = true;
        for (std::size_t a = 0; a < d; ++a)
            for (auto crit : {SplitCriterion::sd_reduction, SplitCriterion::variance_reduction}) {
                const auto got = best_split(X, y, rows, a, crit);
                const auto want = oracle::best_split(X, y, rows, a, crit, 1);
                same = same && got.has_value() == want.has_value() && (!got || got->threshold == want->threshold);
            }
        split_ok += same;

        const auto s = fit_weighted_stump(X, y, {}, presort_columns(X));
        const auto os = oracle::stump(X, y);
        stump_ok += s.has_split == os.has_split &&
                    (!s.has_split || (s.attribute == os.attribute && s.threshold == os.threshold));

        const double m = mean(y);
        bool any_var = false;
        for (double v : y) any_var = any_var || v != m;
        const auto want_attr = oracle::slr_attribute(X, y);
        if (!any_var || !want_attr) {
            ++slr_ok;  // degenerate: the learner falls back to the mean
        } else {
            const auto model = train_slr(testing::make_view(X, y));
            slr_ok += model.attribute() == *want_attr;
        }

        const std::size_t gn = 10 + rng.below(3), k = 2 + rng.below(2);
        const Matrix G = testing::grid_matrix(gn, d, rng, 5);
        std::vector<int> labels(gn);
        for (std::size_t r = 0; r < gn; ++r)
            labels[r] = rng.below(3) == 0 ? static_cast<int>(rng.below(k))
                                          : static_cast<int>(static_cast<std::size_t>(G(r, 0)) * k / 5);
        const auto g = choose_gain_ratio_split(G, labels, iota_rows(gn), k, 2);
        const auto og = oracle::gain_ratio(G, labels, k, 2);
        gain_ok += g.has_value() == og.has_value() &&
                   (!g || (g->attribute == og->attribute && g->threshold == og->threshold));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "oracle agreement over %zu instances: split %zu, stump %zu, gain ratio %zu, SLR %zu",
                  trials, split_ok, stump_ok, gain_ok, slr_ok);
    report("AC4", split_ok == trials && stump_ok == trials && gain_ok == trials && slr_ok == trials, buf);
}

void ac5() {
    RngStream rng(555);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.below(4), h = 1 + rng.below(5), n = 1 + rng.below(8);
        MlpNetwork net = MlpNetwork::random(d, h, rng, 1.0);
        const Matrix X = testing::random_matrix(n, d, rng, -1, 1);
        std::vector<double> y(n);
        for (auto& v : y) v = rng.uniform(-1, 1);
        const auto g = net.gradient(X, y);
        auto w = net.parameters();
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double keep = w[k], step = 1e-5;
            w[k] = keep + step;
            const double up = net.loss(X, y);
            w[k] = keep - step;
            const double down = net.loss(X, y);
            w[k] = keep;
            const double fd = (up - down) / (2 * step);
            worst = std::max(worst, std::abs(fd - g[k]) / std::max(1.0, std::abs(fd) + std::abs(g[k])));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative gradient error %.3g over 20 networks", worst);
    report("AC5", worst < 1e-4, buf);
}

void ac6() {
    RngStream rng(666);
    bool ok = true;
    double worst_kkt = 0.0;
    int fits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 10 + rng.below(60), d = 1 + rng.below(4);
        const Matrix X = testing::random_matrix(n, d, rng, -2, 2);
        std::vector<double> y(n);
        for (std::size_t r = 0; r < n; ++r) y[r] = X(r, 0) - 0.5 * X(r, d - 1) + rng.uniform(-0.5, 0.5);
        SmoregParams p;
        p.C = rng.uniform(0.5, 5);
        p.epsilon = rng.uniform(0.0, 0.2);
        p.objective_every = 1000;
        p.max_updates = 200000;
        try {
            const auto m = train_smoreg(testing::make_view(X, y), p);
            ++fits;
            const double v = max_kkt_violation(m, y);
            worst_kkt = std::max(worst_kkt, v);
            ok = ok && v <= p.tolerance;
            for (double b : m.dual_coefficients()) ok = ok && std::abs(b) <= p.C * (1 + 1e-12);
            const auto& tr = m.diagnostics().objective_trace;
            for (std::size_t k = 1; k < tr.size(); ++k)
                ok = ok && tr[k] >= tr[k - 1] - 1e-9 * std::max(1.0, std::abs(tr[k - 1]));
        } catch (const ConvergenceError&) {
            // Only converged fits are subject to the criterion.
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d converged fits, max KKT violation %.3g", fits, worst_kkt);
    report("AC6", ok && fits > 0, buf);
}

void ac7() {
    RngStream rng(777);
    const Matrix X = testing::random_matrix(1000, 5, rng);
    std::vector<double> y(1000);
    for (auto& v : y) v = rng.uniform(0, 100);
    const auto ibk = train_ibk(testing::make_view(X, y));
    double err = 0;
    for (std::size_t r = 0; r < 1000; ++r) err += std::abs(ibk.predict(X.row(r)) - y[r]);
    const auto w = lwl_weights(std::vector<double>{0, 1, 2});
    const bool ok = err == 0.0 && w.size() == 3 && w[0] == 1.0 && w[1] == 0.5 && w[2] == 0.0;
    report("AC7", ok, "IBk resubstitution error " + std::to_string(err) + ", LWL weights on [0,1,2]");
}

void ac8() {
    RngStream rng(888);
    const Matrix L = testing::random_matrix(150, 3, rng, -2, 2);
    std::vector<double> ly(150);
    for (std::size_t r = 0; r < 150; ++r) ly[r] = 1.5 - 2.0 * L(r, 0) + 0.25 * L(r, 2);
    const auto linear = train_m5p(testing::make_view(L, ly));
    double worst = 0;
    for (std::size_t r = 0; r < 150; ++r) worst = std::max(worst, std::abs(linear.predict(L.row(r)) - ly[r]));
    const bool single = linear.node_count() == 1 && worst < 1e-6;

    Matrix X(100, 1);
    std::vector<double> y(100);
    for (std::size_t i = 0; i < 50; ++i) {
        X(i, 0) = -5.0 + 0.1 * static_cast<double>(i);
        y[i] = X(i, 0);
        X(50 + i, 0) = 0.1 * static_cast<double>(i);
        y[50 + i] = 10.0 + X(50 + i, 0);
    }
    const auto view = testing::make_view(X, y);
    const auto tree = train_m5p(view);
    const bool m5p_gap = !tree.root().is_leaf() && tree.root().threshold > -0.1 && tree.root().threshold < 0.0;
    const auto rules = train_m5rules(view);
    const auto& first = rules.rules().front().conditions;
    const bool rule_gap = !first.empty() && first.front().threshold > -0.1 && first.front().threshold < 0.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "linear fit %zu node(s), max error %.2g; M5P root %.4g; first rule %s%.4g",
                  linear.node_count(), worst, tree.root().threshold, first.empty() ? "(none) " : "",
                  first.empty() ? 0.0 : first.front().threshold);
    report("AC8", single && m5p_gap && rule_gap, buf);
}

void ac9() {
    const auto table = testing::synthetic_table(500, 99);
    ExperimentConfig c;
    const auto a = run_benchmark(c, table);
    const auto b = run_benchmark(c, table);
    bool same = a.all_succeeded() && b.all_succeeded();
    for (auto f : {ReportFormat::text, ReportFormat::markdown, ReportFormat::csv, ReportFormat::json})
        same = same && render_report(a, f) == render_report(b, f);
    report("AC9", same, "two full runs on a synthetic table render byte-identical reports");
}

struct Target {
    const char* key;
    double cc;
    bool wide;  // also accept CC in [0.70, 0.90]
};

const Target targets[] = {
    {"slr", 0.9453, false},      {"mlp", 0.9922, false},          {"smoreg", 0.9496, false},
    {"m5rules", 0.9967, false},  {"decisiontable", 0.9985, false}, {"m5p", 0.9964, false},
    {"reptree", 0.9969, false},  {"decisionstump", 0.7919, true},  {"ibk", 0.9974, false},
    {"lwl", 0.8060, true},       {"regbydisc", 0.9900, false},
};

int dataset(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        for (const char* id : {"AC2", "AC3", "AC10"}) skip(id, "data file not found: " + path);
        return 77;
    }
    const auto table = load_table_file(path);

    const auto task = make_task(table, "total_UPDRS", {});
    const auto [train, test] = split(task, SplitSpec{1, 0.75});
    const auto warnings = validate_ranges(table);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu rows split %zu/%zu, %zu range warnings", table.row_count(), train.size(),
                  test.size(), warnings.size());
    report("AC10", table.row_count() == 5875 && train.size() == 4406 && test.size() == 1469 && warnings.empty(), buf);
    for (const auto& w : warnings) std::printf("    %s\n", w.message().c_str());

    const std::uint64_t seeds[] = {1, 2, 3, 4, 5};
    std::map<std::string, int> hits;
    int rank_ok = 0;
    double first_run_seconds = 0;
    bool all_ran = true;
    for (auto seed : seeds) {
        ExperimentConfig c;
        c.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        const auto result = run_benchmark(c, table);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seed == seeds[0]) first_run_seconds = secs;
        all_ran = all_ran && result.all_succeeded();

        std::printf("    seed %llu (%.1fs):", static_cast<unsigned long long>(seed), secs);
        double best = -2, worst = 2;
        std::string best_key, worst_key;
        for (const auto& o : result.outcomes) {
            const double cc = o.report && o.report->correlation_coefficient ? *o.report->correlation_coefficient : -1;
            std::printf(" %s=%.4f", o.learner.key.c_str(), cc);
            if (cc > best) best = cc, best_key = o.learner.key;
            if (cc < worst) worst = cc, worst_key = o.learner.key;
            for (const auto& t : targets)
                if (o.learner.key == t.key && (near(cc, t.cc, 0.03) || (t.wide && cc >= 0.70 && cc <= 0.90)))
                    ++hits[t.key];
        }
        std::printf("\n");
        rank_ok += best_key == "decisiontable" && worst_key == "decisionstump";
    }

    bool cc_ok = all_ran && first_run_seconds < 300;
    std::string detail;
    for (const auto& t : targets) {
        cc_ok = cc_ok && hits[t.key] >= 3;
        detail += std::string(detail.empty() ? "" : " ") + t.key + ":" + std::to_string(hits[t.key]) + "/5";
    }
    std::snprintf(buf, sizeof buf, "; full run %.1fs", first_run_seconds);
    report("AC2", cc_ok, detail + buf);
    report("AC3", rank_ok >= 4, "decision table max and stump min in " + std::to_string(rank_ok) + "/5 seeds");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "synthetic";
    try {
        if (mode == "dataset") {
            std::string path = argc > 2 ? argv[2] : "data/parkinsons_updrs.data";
            if (const char* env = std::getenv("PDBENCH_DATA"); env && *env) path = env;
            return dataset(path);
        }
        ac1();
        ac4();
        ac5();
        ac6();
        ac7();
        ac8();
        ac9();
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 1;
    }
    return failures ? 1 : 0;
}
