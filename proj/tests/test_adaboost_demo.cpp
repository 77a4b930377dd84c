#include "zeekml/ml/adaboost.hpp"

#include "zeekml/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace zeekml;
using namespace zeekml::ml;

TEST_CASE("pool generation stays in the accuracy band") {
    Rng rng = derive_rng(30, "pool-band");
    WeakClassifierPool pool = make_weak_pool(200, 1000, 0.51, 0.52, rng);
    REQUIRE(pool.outputs.size() == 200);
    for (std::size_t c = 0; c < pool.outputs.size(); ++c) {
        std::size_t correct = 0;
        for (std::size_t i = 0; i < pool.truth.size(); ++i)
            correct += pool.outputs[c][i] == pool.truth[i] ? 1 : 0;
        double accuracy = static_cast<double>(correct) / static_cast<double>(pool.truth.size());
        REQUIRE(accuracy >= 0.51);
        REQUIRE(accuracy <= 0.52);
        REQUIRE(accuracy == pool.accuracy[c]);
    }
}

TEST_CASE("a perfect injected classifier wins round one") {
    Rng rng = derive_rng(31, "pool-perfect");
    WeakClassifierPool pool = make_weak_pool(50, 400, 0.51, 0.52, rng);
    pool.outputs.push_back(pool.truth); // perfect classifier
    pool.accuracy.push_back(1.0);

    BoostDemoCurve curve = adaboost_demo(pool, static_cast<int>(pool.outputs.size()), 1);
    REQUIRE(curve.accuracy.size() == 1);
    CHECK(curve.accuracy[0] == doctest::Approx(1.0));
    CHECK(curve.picked[0] == static_cast<int>(pool.outputs.size()) - 1);

    // Continuing past a degenerate pick is impossible.
    CHECK_THROWS_AS(adaboost_demo(pool, static_cast<int>(pool.outputs.size()), 5),
                    DegenerateError);
}

TEST_CASE("full pool reaches near-ideal accuracy; starved pool plateaus") {
    Rng rng = derive_rng(32, "pool-main");
    WeakClassifierPool pool = make_weak_pool(1000, 200, 0.51, 0.52, rng);

    BoostDemoCurve full = adaboost_demo(pool, 1000, 200);
    REQUIRE(full.accuracy.size() == 200);
    double best_full = *std::max_element(full.accuracy.begin(), full.accuracy.end());
    CHECK(best_full >= 0.99);

    BoostDemoCurve starved = adaboost_demo(pool, 250, 200);
    double best_starved = *std::max_element(starved.accuracy.begin(), starved.accuracy.end());
    CHECK(best_starved < 0.93);

    // More classifiers never hurt the plateau.
    CHECK(best_full >= best_starved);
}

TEST_CASE("alpha weights are positive while errors beat chance") {
    Rng rng = derive_rng(33, "pool-alpha");
    WeakClassifierPool pool = make_weak_pool(300, 500, 0.51, 0.52, rng);
    BoostDemoCurve curve = adaboost_demo(pool, 300, 50);
    CHECK(curve.alpha[0] > 0.0); // first pick is the best raw classifier
    CHECK(curve.picked.size() == 50);
}
