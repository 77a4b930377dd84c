#include "zeekml/ml/adaboost.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeekml::ml {

WeakClassifierPool make_weak_pool(int n_classifiers, int n_samples, double acc_lo, double acc_hi,
                                  Rng& rng) {
    if (n_samples <= 0 || n_classifiers <= 0)
        throw std::invalid_argument("pool dimensions must be positive");
    const auto n = static_cast<std::size_t>(n_samples);
    const auto lo = static_cast<std::size_t>(std::ceil(acc_lo * n_samples));
    const auto hi = static_cast<std::size_t>(std::floor(acc_hi * n_samples));
    if (lo > hi)
        throw std::invalid_argument("accuracy band admits no integer count");

    WeakClassifierPool pool;
    pool.truth.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        pool.truth[i] = rng.bernoulli(0.5) ? 1 : -1;

    std::vector<std::size_t> positions(n);
    for (std::size_t i = 0; i < n; ++i)
        positions[i] = i;

    pool.outputs.reserve(n_classifiers);
    pool.accuracy.reserve(n_classifiers);
    for (int c = 0; c < n_classifiers; ++c) {
        const std::size_t correct = lo + rng.uniform_index(hi - lo + 1);
        // Partial Fisher-Yates: the first `correct` positions stay truthful.
        for (std::size_t i = 0; i < correct && i < n; ++i) {
            std::size_t j = i + rng.uniform_index(n - i);
            std::swap(positions[i], positions[j]);
        }
        std::vector<int8_t> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<int8_t>(-pool.truth[i]);
        for (std::size_t i = 0; i < correct; ++i)
            out[positions[i]] = pool.truth[positions[i]];
        pool.outputs.push_back(std::move(out));
        pool.accuracy.push_back(static_cast<double>(correct) / static_cast<double>(n));
    }
    return pool;
}

BoostDemoCurve adaboost_demo(const WeakClassifierPool& pool, int l, int iterations) {
    const std::size_t n = pool.truth.size();
    const std::size_t usable = std::min<std::size_t>(static_cast<std::size_t>(l),
                                                     pool.outputs.size());
    if (n == 0 || usable == 0)
        throw std::invalid_argument("empty pool");

    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<double> vote(n, 0.0);
    BoostDemoCurve curve;
    curve.accuracy.reserve(iterations);
    curve.picked.reserve(iterations);
    curve.alpha.reserve(iterations);

    // Per classifier, cache the indices it gets wrong; weighted error is a
    // sum of current weights over them.
    std::vector<std::vector<uint32_t>> wrong(usable);
    for (std::size_t c = 0; c < usable; ++c)
        for (std::size_t i = 0; i < n; ++i)
            if (pool.outputs[c][i] != pool.truth[i])
                wrong[c].push_back(static_cast<uint32_t>(i));

    for (int round = 0; round < iterations; ++round) {
        std::size_t best = 0;
        double best_eps = 2.0;
        for (std::size_t c = 0; c < usable; ++c) {
            double eps = 0.0;
            for (uint32_t i : wrong[c])
                eps += weights[i];
            if (eps < best_eps) {
                best_eps = eps;
                best = c;
            }
        }
        const bool degenerate = best_eps <= 0.0 || best_eps >= 1.0;
        const double eps = std::clamp(best_eps, 1e-12, 1.0 - 1e-12);
        const double alpha = 0.5 * std::log((1.0 - eps) / eps);
        const std::vector<int8_t>& out = pool.outputs[best];

        std::size_t correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            vote[i] += alpha * out[i];
            if ((vote[i] > 0.0 && pool.truth[i] > 0) || (vote[i] < 0.0 && pool.truth[i] < 0))
                ++correct;
        }
        curve.accuracy.push_back(static_cast<double>(correct) / static_cast<double>(n));
        curve.picked.push_back(static_cast<int>(best));
        curve.alpha.push_back(alpha);

        // A degenerate error (exactly 0 or 1) leaves nothing to reweight
        // through; the round itself is still recorded.
        if (degenerate && round + 1 < iterations)
            throw DegenerateError("selected weighted error is degenerate");

        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double agree = out[i] == pool.truth[i] ? 1.0 : -1.0;
            weights[i] *= std::exp(-alpha * agree);
            z += weights[i];
        }
        for (double& w : weights)
            w /= z;
    }
    return curve;
}

} // namespace zeekml::ml
