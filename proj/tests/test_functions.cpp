#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "telemine/functions.hpp"

#include <cmath>
#include <limits>

using namespace telemine;


TEST_CASE("SLR picks the exactly linear predictor") {
    RngStream rng(5);
    Matrix X(30, 2);
    std::vector<double> y(30);
    for (std::size_t r = 0; r < 30; ++r) {
        X(r, 0) = rng.uniform(-3, 3);
        y[r] = 1.0 + 2.0 * X(r, 0);
        X(r, 1) = rng.uniform(-3, 3);
    }
    const auto m = train_slr(testing::make_view(X, y));
    CHECK(m.attribute() == 0);
    CHECK(m.attribute_name() == "x0");
    CHECK(m.intercept() == doctest::Approx(1.0));
    CHECK(m.slope() == doctest::Approx(2.0));
    CHECK(m.training_sse() < 1e-18 * 30 + 1e-20);
    CHECK(m.predict(std::vector<double>{2.0, 99.0}) == doctest::Approx(5.0));
}

TEST_CASE("SLR on a constant target and degenerate inputs") {
    const auto m = train_slr(testing::make_view(Matrix::from_rows({{1, 4}, {2, 5}, {3, 9}}), {7, 7, 7}));
    CHECK(m.slope() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.intercept() == doctest::Approx(7.0));
    CHECK(m.attribute() == 0);
    CHECK_THROWS_AS(train_slr(testing::make_view(Matrix::from_rows({{1}, {1}}), {1, 2})), TrainingError);
    CHECK_THROWS_AS(train_slr(testing::make_view(Matrix::from_rows({{1}}), {1})), TrainingError);
}

TEST_CASE("SLR matches the brute-force SSE argmin") {
    RngStream rng(17);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = 3 + rng.below(10), d = 1 + rng.below(4);
        const Matrix X = testing::grid_matrix(n, d, rng, 4);
        std::vector<double> y(n);
        for (auto& v : y) v = static_cast<double>(rng.below(5));
        const auto arg = oracle::slr_attribute(X, y);
        if (!arg) {
            CHECK_THROWS_AS(train_slr(testing::make_view(X, y)), TrainingError);
            continue;
        }
        const auto m = train_slr(testing::make_view(X, y));
        CHECK(m.attribute() == *arg);
        CHECK(m.training_sse() == doctest::Approx(oracle::slr_sse(X, y, *arg)));
    }
}

TEST_CASE("zero MLP network answers its output bias") {
    MlpNetwork net(3, 4);
    RngStream rng(1);
    for (int i = 0; i < 5; ++i) {
        std::vector<double> x{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(net.forward(x) == 0.0);
    }
    net.parameters().back() = 1.25;
    CHECK(net.forward(std::vector<double>{9, 9, 9}) == 1.25);
    CHECK(net.parameters().size() == 3 * 4 + 4 + 4 + 1);
    CHECK_THROWS_AS(net.forward(std::vector<double>{1}), DimensionError);
}

TEST_CASE("MLP backpropagation matches central differences") {
    RngStream rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.below(4), h = 1 + rng.below(4), n = 1 + rng.below(6);
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
    CHECK(worst < 1e-4);
}

TEST_CASE("MLP small gradient step decreases the loss to first order") {
    RngStream rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        MlpNetwork net = MlpNetwork::random(3, 3, rng, 0.5);
        const Matrix X = testing::random_matrix(8, 3, rng, -1, 1);
        std::vector<double> y(8);
        for (auto& v : y) v = rng.uniform(-1, 1);
        const double before = net.loss(X, y);
        const auto g = net.gradient(X, y);
        double g2 = 0;
        for (double v : g) g2 += v * v;
        const double lr = 1e-6;
        auto w = net.parameters();
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= lr * g[k];
        const double decrease = before - net.loss(X, y);
        CHECK(decrease == doctest::Approx(lr * g2).epsilon(1e-3));
    }
}

TEST_CASE("MLP training is deterministic and fits a smooth function") {
    RngStream data(3);
    const Matrix X = testing::random_matrix(80, 2, data, -1, 1);
    std::vector<double> y(80);
    for (std::size_t r = 0; r < 80; ++r) y[r] = 10 + 3 * X(r, 0) - 2 * X(r, 1);
    const auto view = testing::make_view(X, y);
    MlpParams p;
    p.epochs = 200;
    RngStream r1(8), r2(8);
    const auto a = train_mlp(view, p, r1), b = train_mlp(view, p, r2);
    double sse = 0, var = 0;
    for (std::size_t r = 0; r < 80; ++r) {
        CHECK(a.predict(X.row(r)) == b.predict(X.row(r)));
        sse += std::pow(a.predict(X.row(r)) - y[r], 2);
        var += std::pow(y[r] - 10, 2);
    }
    CHECK(sse < 0.05 * var);
    CHECK(a.network().hidden() == 13);
}

TEST_CASE("MLP divergence names the epoch") {
    RngStream data(4);
    const Matrix X = testing::random_matrix(30, 2, data, -1, 1);
    std::vector<double> y(30);
    for (std::size_t r = 0; r < 30; ++r) y[r] = X(r, 0) * 5;
    MlpParams p;
    p.learning_rate = 1e6;
    p.momentum = 0.9;
    p.epochs = 50;
    RngStream rng(1);
    CHECK_THROWS_WITH_AS(train_mlp(testing::make_view(X, y), p, rng), doctest::Contains("epoch"), TrainingError);
}

TEST_CASE("SVR with a constant target is flat") {
    const Matrix X = Matrix::from_rows({{0, 1}, {1, 0}, {2, 5}, {3, 3}});
    SmoregParams p;
    p.epsilon = 0.1;
    const auto m = train_smoreg(testing::make_view(X, {4, 4, 4, 4}), p);
    for (double b : m.dual_coefficients()) CHECK(b == 0.0);
    CHECK(m.bias() == doctest::Approx(4.0));
    CHECK(m.predict(std::vector<double>{10, -3}) == doctest::Approx(4.0));
    CHECK(m.support_vector_count() == 0);
}

TEST_CASE("SVR recovers an exactly linear target") {
    const Matrix X = Matrix::from_rows({{0}, {1}, {2}, {3}, {4}});
    const std::vector<double> y{0, 2, 4, 6, 8};
    SmoregParams p;
    p.C = 100;
    p.epsilon = 0.01;
    const auto m = train_smoreg(testing::make_view(X, y), p);
    double mae = 0;
    for (std::size_t r = 0; r < 5; ++r) mae += std::abs(m.predict(X.row(r)) - y[r]) / 5;
    CHECK(mae <= 0.01 + 1e-3);
    CHECK(max_kkt_violation(m, y) <= p.tolerance);
}

TEST_CASE("SVR optimality conditions on random problems") {
    RngStream rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 5 + rng.below(40), d = 1 + rng.below(4);
        const Matrix X = testing::random_matrix(n, d, rng, -2, 2);
        std::vector<double> y(n);
        for (std::size_t r = 0; r < n; ++r) y[r] = rng.uniform(-1, 1) + X(r, 0);
        SmoregParams p;
        p.C = rng.uniform(0.1, 10);
        p.epsilon = rng.uniform(0, 0.3);
        p.kernel.exponent = 1 + static_cast<int>(rng.below(3));
        p.kernel.inhomogeneous = rng.below(2) == 1;
        p.objective_every = 5;
        const auto m = train_smoreg(testing::make_view(X, y), p);
        for (double b : m.dual_coefficients()) CHECK(std::abs(b) <= p.C * (1 + 1e-12));
        CHECK(max_kkt_violation(m, y) <= p.tolerance);
        const auto& trace = m.diagnostics().objective_trace;
        for (std::size_t k = 1; k < trace.size(); ++k)
            CHECK(trace[k] >= trace[k - 1] - 1e-9 * std::max(1.0, std::abs(trace[k - 1])));
        // Complementary slackness inside the tube.
        for (std::size_t r = 0; r < n; ++r) {
            const double res = std::abs(y[r] - m.predict(X.row(r)));
            if (res < p.epsilon - p.tolerance) CHECK(m.dual_coefficients()[r] == 0.0);
        }
    }
}

TEST_CASE("SVR reports non-convergence with the violation") {
    RngStream rng(2);
    const Matrix X = testing::random_matrix(60, 3, rng);
    std::vector<double> y(60);
    for (auto& v : y) v = rng.uniform(-10, 10);
    SmoregParams p;
    p.max_updates = 3;
    try {
        train_smoreg(testing::make_view(X, y), p);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.max_violation() > p.tolerance);
    }
    p = {};
    p.C = -1;
    CHECK_THROWS_AS(train_smoreg(testing::make_view(X, y), p), TrainingError);
}
