#include "zeekml/ml/tree.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zeekml::ml {

std::string_view model_kind_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::svm: return "svm";
    case ModelKind::forest: return "forest";
    case ModelKind::boosting: return "boosting";
    }
    return "?";
}

std::optional<ModelKind> model_kind_from_string(std::string_view s) {
    if (s == "svm")
        return ModelKind::svm;
    if (s == "forest")
        return ModelKind::forest;
    if (s == "boosting")
        return ModelKind::boosting;
    return std::nullopt;
}

TrainConfig TrainConfig::forest_defaults() {
    TrainConfig c;
    c.n_estimators = 500;
    c.max_depth = -1;
    return c;
}

TrainConfig TrainConfig::boosting_defaults() {
    TrainConfig c;
    c.n_estimators = 1000;
    c.max_depth = 6;
    return c;
}

TrainConfig TrainConfig::svm_defaults() {
    TrainConfig c;
    c.n_estimators = 0;
    return c;
}

int TreeModel::leaf_index(std::span<const double> x) const {
    int idx = 0;
    while (!nodes[idx].is_leaf())
        idx = x[nodes[idx].feature] <= nodes[idx].threshold ? nodes[idx].left : nodes[idx].right;
    return idx;
}

const std::vector<double>& TreeModel::predict_proba(std::span<const double> x) const {
    return nodes[leaf_index(x)].probs;
}

double TreeModel::predict_value(std::span<const double> x) const {
    return nodes[leaf_index(x)].value;
}

double entropy_bits(std::span<const std::size_t> class_counts, std::size_t total) {
    if (total == 0)
        return 0.0;
    double h = 0.0;
    for (std::size_t c : class_counts) {
        if (c == 0)
            continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

namespace {

constexpr double kMinGain = 1e-12;

double gini_impurity(std::span<const std::size_t> class_counts, std::size_t total) {
    if (total == 0)
        return 0.0;
    double g = 1.0;
    for (std::size_t c : class_counts) {
        double p = static_cast<double>(c) / static_cast<double>(total);
        g -= p * p;
    }
    return g;
}

double impurity(std::span<const std::size_t> counts, std::size_t total, SplitCriterion crit) {
    return crit == SplitCriterion::entropy ? entropy_bits(counts, total)
                                           : gini_impurity(counts, total);
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, const std::vector<int>& y, int n_classes,
                const TrainConfig& config, int bag_size, Rng& rng,
                std::span<const int> allowed_features)
        : x_(x), y_(y), n_classes_(n_classes), config_(config), bag_size_(bag_size), rng_(rng) {
        if (allowed_features.empty()) {
            all_features_.resize(x.empty() ? 0 : x.front().size());
            for (std::size_t i = 0; i < all_features_.size(); ++i)
                all_features_[i] = static_cast<int>(i);
        } else {
            all_features_.assign(allowed_features.begin(), allowed_features.end());
        }
    }

    TreeModel build(std::span<const std::size_t> rows) {
        TreeModel model;
        model.n_classes = n_classes_;
        model.n_features = x_.empty() ? 0 : x_.front().size();
        std::vector<std::size_t> work(rows.begin(), rows.end());
        grow(model, work, 0);
        return model;
    }

private:
    // Candidate features for one split. A fresh subset is drawn per split in
    // per_split mode; per_tree restriction arrives via allowed_features.
    std::vector<int> candidates() {
        if (bag_size_ <= 0 || bag_size_ >= static_cast<int>(all_features_.size()))
            return all_features_;
        std::vector<int> pool = all_features_;
        for (int i = 0; i < bag_size_; ++i) {
            std::size_t j = i + rng_.uniform_index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(bag_size_);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    SplitChoice best_split(std::span<const std::size_t> rows,
                           std::span<const std::size_t> parent_counts) {
        SplitChoice best;
        const std::size_t n = rows.size();
        const double parent_impurity = impurity(parent_counts, n, config_.split_criterion);

        std::vector<std::pair<double, int>> column(n);
        std::vector<std::size_t> left_counts(n_classes_), right_counts(n_classes_);
        for (int feature : candidates()) {
            for (std::size_t i = 0; i < n; ++i)
                column[i] = {x_[rows[i]][feature], y_[rows[i]]};
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::fill(left_counts.begin(), left_counts.end(), 0);
            for (int c = 0; c < n_classes_; ++c)
                right_counts[c] = parent_counts[c];

            for (std::size_t i = 0; i + 1 < n; ++i) {
                const int cls = column[i].second;
                ++left_counts[cls];
                --right_counts[cls];
                if (column[i + 1].first <= column[i].first)
                    continue; // split only between distinct values
                const std::size_t n_left = i + 1;
                const std::size_t n_right = n - n_left;
                double child = (static_cast<double>(n_left) / n) *
                                   impurity(left_counts, n_left, config_.split_criterion) +
                               (static_cast<double>(n_right) / n) *
                                   impurity(right_counts, n_right, config_.split_criterion);
                double gain = parent_impurity - child;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = feature;
                    best.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
                }
            }
        }
        return best;
    }

    int grow(TreeModel& model, std::vector<std::size_t>& rows, int depth) {
        std::vector<std::size_t> counts(n_classes_, 0);
        for (std::size_t r : rows)
            ++counts[y_[r]];

        const int node_index = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();
        model.nodes[node_index].n_samples = rows.size();

        bool pure = std::count_if(counts.begin(), counts.end(),
                                  [](std::size_t c) { return c > 0; }) <= 1;
        bool depth_capped = config_.max_depth >= 0 && depth >= config_.max_depth;
        SplitChoice split;
        if (!pure && !depth_capped &&
            rows.size() >= static_cast<std::size_t>(config_.min_samples_split))
            split = best_split(rows, counts);

        if (split.feature < 0 || split.gain <= kMinGain) {
            auto& node = model.nodes[node_index];
            node.probs.resize(n_classes_);
            for (int c = 0; c < n_classes_; ++c)
                node.probs[c] = static_cast<double>(counts[c]) / static_cast<double>(rows.size());
            return node_index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        for (std::size_t r : rows)
            (x_[r][split.feature] <= split.threshold ? left_rows : right_rows).push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        model.nodes[node_index].feature = split.feature;
        model.nodes[node_index].threshold = split.threshold;
        model.nodes[node_index].gain = split.gain;
        int left = grow(model, left_rows, depth + 1);
        int right = grow(model, right_rows, depth + 1);
        model.nodes[node_index].left = left;
        model.nodes[node_index].right = right;
        return node_index;
    }

    const Matrix& x_;
    const std::vector<int>& y_;
    const int n_classes_;
    const TrainConfig& config_;
    const int bag_size_;
    Rng& rng_;
    std::vector<int> all_features_;
};

} // namespace

TreeModel train_decision_tree(const Matrix& x, const std::vector<int>& y,
                              const TrainConfig& config, Rng& rng, int n_classes) {
    if (x.empty())
        throw EmptyDataset("train_decision_tree: no rows");
    if (x.size() != y.size())
        throw DimensionMismatch("rows and labels differ in length");
    std::vector<std::size_t> rows(x.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;
    TreeBuilder builder(x, y, n_classes, config, /*bag_size=*/0, rng, {});
    return builder.build(rows);
}

namespace detail {

TreeModel grow_classification_tree(const Matrix& x, const std::vector<int>& y,
                                   std::span<const std::size_t> rows, int n_classes,
                                   const TrainConfig& config, int bag_size, Rng& rng,
                                   std::span<const int> allowed_features) {
    TreeBuilder builder(x, y, n_classes, config, bag_size, rng, allowed_features);
    return builder.build(rows);
}

} // namespace detail

void accumulate_importance(const TreeModel& tree, std::vector<double>& sink) {
    for (const TreeNode& node : tree.nodes)
        if (!node.is_leaf())
            sink[node.feature] += static_cast<double>(node.n_samples) * node.gain;
}

} // namespace zeekml::ml
