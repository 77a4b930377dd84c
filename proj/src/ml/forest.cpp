#include "zeekml/ml/forest.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zeekml::ml {

namespace {

int effective_bag_size(const TrainConfig& config, std::size_t n_features) {
    if (config.feature_bag_size > 0)
        return std::min<int>(config.feature_bag_size, static_cast<int>(n_features));
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_features))));
}

} // namespace

ForestModel train_random_forest(const Matrix& x, const std::vector<int>& y,
                                const TrainConfig& config, int n_classes) {
    if (x.empty())
        throw EmptyDataset("train_random_forest: no rows");
    if (x.size() != y.size())
        throw DimensionMismatch("rows and labels differ in length");

    const std::size_t n = x.size();
    const std::size_t n_features = x.front().size();
    const int bag = effective_bag_size(config, n_features);

    ForestModel model;
    model.config = config;
    model.n_classes = n_classes;
    model.n_features = n_features;
    model.trees.reserve(config.n_estimators);

    // OOB vote accumulation: per row, summed probability over trees that did
    // not see it.
    std::vector<std::vector<double>> oob_votes(n, std::vector<double>(n_classes, 0.0));
    std::vector<std::size_t> oob_trees(n, 0);

    for (int t = 0; t < config.n_estimators; ++t) {
        Rng rng = derive_rng(config.seed, "forest-tree-" + std::to_string(t));

        std::vector<std::size_t> rows(n);
        std::vector<bool> in_bag(n, false);
        if (config.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) {
                rows[i] = rng.uniform_index(n);
                in_bag[rows[i]] = true;
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                rows[i] = i;
                in_bag[i] = true;
            }
        }

        std::vector<int> tree_features;
        int split_bag = bag;
        if (config.feature_bag_mode == FeatureBagMode::per_tree) {
            std::vector<int> pool(n_features);
            for (std::size_t i = 0; i < n_features; ++i)
                pool[i] = static_cast<int>(i);
            for (int i = 0; i < bag && i < static_cast<int>(n_features); ++i) {
                std::size_t j = i + rng.uniform_index(pool.size() - i);
                std::swap(pool[i], pool[j]);
            }
            pool.resize(std::min<std::size_t>(bag, n_features));
            std::sort(pool.begin(), pool.end());
            tree_features = std::move(pool);
            split_bag = 0; // the per-tree subset is the whole candidate pool
        }

        TreeModel tree = detail::grow_classification_tree(x, y, rows, n_classes, config,
                                                          split_bag, rng, tree_features);
        if (config.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) {
                if (in_bag[i])
                    continue;
                const auto& probs = tree.predict_proba(x[i]);
                for (int c = 0; c < n_classes; ++c)
                    oob_votes[i][c] += probs[c];
                ++oob_trees[i];
            }
        }
        model.trees.push_back(std::move(tree));
        model.tree_feature_subsets.push_back(std::move(tree_features));
    }

    if (config.bootstrap) {
        std::size_t covered = 0, correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (oob_trees[i] == 0)
                continue;
            ++covered;
            int best = 0;
            for (int c = 1; c < n_classes; ++c)
                if (oob_votes[i][c] > oob_votes[i][best])
                    best = c;
            if (best == y[i])
                ++correct;
        }
        if (covered > 0)
            model.oob_accuracy = static_cast<double>(correct) / static_cast<double>(covered);
    }
    return model;
}

std::vector<double> predict_proba(const ForestModel& model, std::span<const double> x) {
    if (x.size() != model.n_features)
        throw DimensionMismatch("forest expects " + std::to_string(model.n_features) +
                                " features, got " + std::to_string(x.size()));
    std::vector<double> probs(model.n_classes, 0.0);
    for (const TreeModel& tree : model.trees) {
        const auto& p = tree.predict_proba(x);
        for (int c = 0; c < model.n_classes; ++c)
            probs[c] += p[c];
    }
    if (!model.trees.empty())
        for (double& p : probs)
            p /= static_cast<double>(model.trees.size());
    return probs;
}

double predict_score(const ForestModel& model, std::span<const double> x) {
    return predict_proba(model, x)[1];
}

int predict_label(const ForestModel& model, std::span<const double> x) {
    std::vector<double> probs = predict_proba(model, x);
    if (model.n_classes == 2) {
        double score = probs[1];
        if (score == 0.5)
            return model.config.tie_predict_malicious ? 1 : 0;
        return score > 0.5 ? 1 : 0;
    }
    int best = 0;
    for (int c = 1; c < model.n_classes; ++c)
        if (probs[c] > probs[best])
            best = c;
    return best;
}

std::vector<double> importance_vector(const ForestModel& model) {
    std::vector<double> importance(model.n_features, 0.0);
    for (const TreeModel& tree : model.trees)
        accumulate_importance(tree, importance);
    double total = 0.0;
    for (double v : importance)
        total += v;
    if (total > 0.0)
        for (double& v : importance)
            v /= total;
    return importance;
}

} // namespace zeekml::ml
