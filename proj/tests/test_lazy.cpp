#include "doctest.h"
#include "support.hpp"

#include "telemine/lazy.hpp"

#include <cmath>

using namespace telemine;

TEST_CASE("similarity is negative Euclidean distance") {
    const std::vector<double> a{1, 2}, b{4, 6}, c{1, 3};
    CHECK(similarity(a, a) == 0.0);
    CHECK(similarity(a, b) == doctest::Approx(-5.0));
    CHECK(similarity(a, c) == doctest::Approx(-1.0));
    CHECK(similarity(a, b) == similarity(b, a));
    CHECK_THROWS_AS(similarity(a, std::vector<double>{1}), DimensionError);
}

TEST_CASE("IBk answers with the nearest training target") {
    const auto view = testing::make_view(Matrix::from_rows({{0}, {10}}), {1.0, 2.0});
    const auto model = train_ibk(view);
    CHECK(model.nearest(std::vector<double>{4}) == 0);
    CHECK(model.predict(std::vector<double>{4}) == 1.0);
    CHECK(model.predict(std::vector<double>{6}) == 2.0);
    // Equidistant: the lower index wins.
    CHECK(model.nearest(std::vector<double>{5}) == 0);
    // Queries outside the training range are clamped.
    CHECK(model.predict(std::vector<double>{-100}) == 1.0);
}

TEST_CASE("IBk resubstitution and rescaling invariance") {
    RngStream rng(99);
    const Matrix X = testing::random_matrix(1000, 4, rng, -3, 3);
    std::vector<double> y(1000);
    for (auto& v : y) v = rng.uniform(0, 50);
    const auto model = train_ibk(testing::make_view(X, y));
    for (std::size_t r = 0; r < 1000; ++r) CHECK(model.predict(X.row(r)) == y[r]);

    Matrix Xs = X;
    for (std::size_t r = 0; r < 1000; ++r) {
        Xs(r, 0) = 7.0 * X(r, 0) + 3.0;
        Xs(r, 2) = 0.01 * X(r, 2) - 40.0;
    }
    const auto scaled = train_ibk(testing::make_view(Xs, y));
    for (int q = 0; q < 200; ++q) {
        std::vector<double> x(4), xs(4);
        for (std::size_t c = 0; c < 4; ++c) x[c] = rng.uniform(-3, 3);
        xs = x;
        xs[0] = 7.0 * x[0] + 3.0;
        xs[2] = 0.01 * x[2] - 40.0;
        CHECK(model.predict(x) == doctest::Approx(scaled.predict(xs)));
    }
}

TEST_CASE("LWL weights") {
    const auto w = lwl_weights(std::vector<double>{0, 1, 2});
    REQUIRE(w.size() == 3);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == 0.5);
    CHECK(w[2] == 0.0);
    for (double v : lwl_weights(std::vector<double>{0, 0})) CHECK(v == 1.0);
}

TEST_CASE("LWL fits the distance-weighted stump") {
    RngStream rng(123);
    const Matrix X = testing::random_matrix(80, 3, rng);
    std::vector<double> y(80);
    for (std::size_t r = 0; r < 80; ++r) y[r] = X(r, 0) > 0.5 ? 5.0 + X(r, 1) : X(r, 2);
    const auto view = testing::make_view(X, y);
    const auto model = train_lwl(view);
    const auto& store = model.store();
    const auto sorted = presort_columns(store.normalized());
    for (int q = 0; q < 20; ++q) {
        std::vector<double> x{rng.uniform01(), rng.uniform01(), rng.uniform01()};
        const auto w = lwl_weights(store.distances(store.normalize(x)));
        const auto want = fit_weighted_stump(store.normalized(), store.targets(), w, sorted);
        const auto got = model.local_model(x);
        CHECK(got.has_split == want.has_split);
        CHECK(got.attribute == want.attribute);
        CHECK(got.threshold == want.threshold);
        CHECK(model.predict(x) == want.predict(store.normalize(x)));
    }
    // A training point is at distance zero from itself and gets weight one.
    const auto d = store.distances(store.normalize(X.row(7)));
    CHECK(lwl_weights(d)[7] == 1.0);
}

TEST_CASE("LWL with equidistant neighbours uses the unweighted stump") {
    const Matrix X = Matrix::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const std::vector<double> y{0, 0, 10, 10};
    const auto model = train_lwl(testing::make_view(X, y));
    const std::vector<double> q{0.5, 0.5};
    for (double w : lwl_weights(model.store().distances(model.store().normalize(q)))) CHECK(w == 0.0);
    const auto fit = model.local_model(q);
    const auto want = fit_weighted_stump(model.store().normalized(), y, {}, presort_columns(model.store().normalized()));
    REQUIRE(fit.has_split);
    CHECK(fit.attribute == want.attribute);
    CHECK(fit.attribute == 1);
    CHECK(fit.threshold == want.threshold);
    CHECK(std::isfinite(model.predict(q)));
}
