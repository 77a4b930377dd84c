#pragma once

#include "zeekml/ml/tree.hpp"

#include <optional>

namespace zeekml::ml {

struct ForestModel {
    std::vector<TreeModel> trees;
    std::vector<std::vector<int>> tree_feature_subsets; // filled in per_tree mode
    int n_classes = 2;
    std::size_t n_features = 0;
    TrainConfig config;
    std::optional<double> oob_accuracy;
};

// Bagged trees: each member trains on a bootstrap resample and draws a fresh
// feature subset of feature_bag_size candidates at every split (or one subset
// per tree in per_tree mode). Throws EmptyDataset.
ForestModel train_random_forest(const Matrix& x, const std::vector<int>& y,
                                const TrainConfig& config, int n_classes = 2);

// Mean of member-tree leaf distributions.
std::vector<double> predict_proba(const ForestModel& model, std::span<const double> x);
// Probability of class 1; binary models only.
double predict_score(const ForestModel& model, std::span<const double> x);
// argmax class; binary ties at 0.5 resolve to benign unless configured.
int predict_label(const ForestModel& model, std::span<const double> x);

// Impurity importance normalized to sum 1 (all zeros when the forest never
// split). Index-aligned with the training columns.
std::vector<double> importance_vector(const ForestModel& model);

} // namespace zeekml::ml
