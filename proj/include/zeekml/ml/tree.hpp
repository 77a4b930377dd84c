#pragma once

#include "zeekml/ml/config.hpp"
#include "zeekml/rng.hpp"

#include <span>
#include <vector>

namespace zeekml::ml {

using Matrix = std::vector<std::vector<double>>;

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> probs; // classification leaf distribution, sums to 1
    double value = 0.0;        // regression leaf output
    double gain = 0.0;         // split gain at internal nodes
    std::size_t n_samples = 0;

    bool is_leaf() const { return feature < 0; }
};

// Binary tree over feature-indexed threshold splits; `x[feature] <= threshold`
// routes left. Node 0 is the root.
struct TreeModel {
    std::vector<TreeNode> nodes;
    int n_classes = 2; // 0 for regression trees
    std::size_t n_features = 0;

    int leaf_index(std::span<const double> x) const;
    const std::vector<double>& predict_proba(std::span<const double> x) const;
    double predict_value(std::span<const double> x) const;
};

// Greedy recursive splitting maximizing information gain, thresholds at
// midpoints between consecutive distinct sorted values. Stops at max_depth,
// min_samples_split, purity, or zero gain. Throws EmptyDataset.
TreeModel train_decision_tree(const Matrix& x, const std::vector<int>& y,
                              const TrainConfig& config, Rng& rng, int n_classes = 2);

namespace detail {

// Forest internals: grow a tree over a row subset with per-split feature
// bagging (bag_size 0 = all features).
TreeModel grow_classification_tree(const Matrix& x, const std::vector<int>& y,
                                   std::span<const std::size_t> rows, int n_classes,
                                   const TrainConfig& config, int bag_size, Rng& rng,
                                   std::span<const int> allowed_features = {});

} // namespace detail

// Entropy of a class-count histogram, in bits.
double entropy_bits(std::span<const std::size_t> class_counts, std::size_t total);

// Adds n_samples * gain per split feature into `sink` (classification trees).
void accumulate_importance(const TreeModel& tree, std::vector<double>& sink);

} // namespace zeekml::ml
