#include "zeekml/eval/rfe.hpp"

#include "zeekml/errors.hpp"
#include "zeekml/rng.hpp"

#include <algorithm>

namespace zeekml::eval {

ml::Matrix select_columns(const ml::Matrix& x, std::span<const int> columns) {
    ml::Matrix out;
    out.reserve(x.size());
    for (const auto& row : x) {
        std::vector<double> r;
        r.reserve(columns.size());
        for (int c : columns)
            r.push_back(row[static_cast<std::size_t>(c)]);
        out.push_back(std::move(r));
    }
    return out;
}

RfeResult rfe(const ml::Trainer& trainer, const ml::Matrix& x, const std::vector<int>& y,
              const RfeOptions& options) {
    if (x.empty())
        throw EmptyDataset("rfe: no rows");
    const int n_features = static_cast<int>(x.front().size());

    RfeResult result;
    result.accuracy_at_k.assign(n_features, 0.0);
    result.features_at_k.assign(n_features, {});

    std::vector<int> alive(n_features);
    for (int i = 0; i < n_features; ++i)
        alive[i] = i;

    while (!alive.empty()) {
        const int k = static_cast<int>(alive.size());
        ml::Matrix sub = select_columns(x, alive);

        uint64_t round_seed = fnv1a64("rfe-k-" + std::to_string(k), options.seed);
        CvReport cv = cross_validate(trainer, sub, y, options.n_folds, round_seed,
                                     options.stratified);
        result.accuracy_at_k[k - 1] = cv.mean_accuracy;
        result.features_at_k[k - 1] = alive;

        if (k == 1) {
            result.elimination_order.push_back(alive[0]);
            break;
        }

        // Ranking model sees every row; CV above owns the accuracy estimate.
        auto model = trainer.train(sub, y, round_seed);
        std::vector<double> importance = model->importance();

        int drop = std::min(options.step, k - 1);
        for (int d = 0; d < drop; ++d) {
            // Weakest column; ties drop the highest original index.
            std::size_t worst = 0;
            for (std::size_t i = 1; i < importance.size(); ++i)
                if (importance[i] < importance[worst] ||
                    (importance[i] == importance[worst] && alive[i] > alive[worst]))
                    worst = i;
            result.elimination_order.push_back(alive[worst]);
            alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(worst));
            importance.erase(importance.begin() + static_cast<std::ptrdiff_t>(worst));
        }
    }

    result.ranking.assign(result.elimination_order.rbegin(), result.elimination_order.rend());
    return result;
}

} // namespace zeekml::eval
