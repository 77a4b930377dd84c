#include "zeekml/ml/boosting.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zeekml::ml {

double sigmoid(double z) {
    if (z > 30.0)
        return 1.0 - 1e-13;
    if (z < -30.0)
        return 1e-13;
    return 1.0 / (1.0 + std::exp(-z));
}

namespace {

constexpr double kMinGain = 1e-12;

// Level-wise exact greedy regression tree over pre-sorted columns. The
// columns are sorted once per boosting run; every round reuses them.
class RegressionTreeBuilder {
public:
    RegressionTreeBuilder(const Matrix& x, const std::vector<std::vector<std::size_t>>& sorted,
                          const TrainConfig& config)
        : x_(x), sorted_(sorted), config_(config), n_(x.size()),
          n_features_(x.empty() ? 0 : x.front().size()) {}

    TreeModel build(const std::vector<double>& grad, const std::vector<double>& hess) {
        TreeModel model;
        model.n_classes = 0;
        model.n_features = n_features_;

        // node_of[row] = tree node the row currently sits in.
        std::vector<int> node_of(n_, 0);
        model.nodes.emplace_back();
        model.nodes[0].n_samples = n_;

        struct NodeStats {
            double g = 0.0, h = 0.0;
            std::size_t count = 0;
        };
        struct NodeBest {
            double gain = 0.0;
            int feature = -1;
            double threshold = 0.0;
        };

        std::vector<int> level = {0};
        std::vector<NodeStats> totals(1);
        for (std::size_t r = 0; r < n_; ++r) {
            totals[0].g += grad[r];
            totals[0].h += hess[r];
            ++totals[0].count;
        }

        const double lambda = config_.l2_leaf_reg;
        auto leaf_objective = [lambda](double g, double h) { return (g * g) / (h + lambda); };

        for (int depth = 0; !level.empty(); ++depth) {
            const bool depth_capped = config_.max_depth >= 0 && depth >= config_.max_depth;

            std::vector<int> slot(model.nodes.size(), -1);
            for (std::size_t i = 0; i < level.size(); ++i)
                slot[level[i]] = static_cast<int>(i);

            std::vector<NodeBest> best(level.size());
            if (!depth_capped) {
                struct Running {
                    double g = 0.0, h = 0.0;
                    std::size_t count = 0;
                    double prev = 0.0;
                    bool seen = false;
                };
                std::vector<Running> run(level.size());
                for (std::size_t f = 0; f < n_features_; ++f) {
                    for (auto& r : run)
                        r = Running{};
                    for (std::size_t r : sorted_[f]) {
                        int node = node_of[r];
                        int s = node >= 0 && node < static_cast<int>(slot.size()) ? slot[node] : -1;
                        if (s < 0)
                            continue;
                        Running& state = run[s];
                        const double v = x_[r][f];
                        if (state.seen && v > state.prev && state.count > 0 &&
                            state.count < totals[s].count) {
                            const NodeStats& tot = totals[s];
                            double gl = state.g, hl = state.h;
                            double gr = tot.g - gl, hr = tot.h - hl;
                            double gain = 0.5 * (leaf_objective(gl, hl) + leaf_objective(gr, hr) -
                                                 leaf_objective(tot.g, tot.h));
                            NodeBest& b = best[s];
                            if (gain > b.gain) {
                                b.gain = gain;
                                b.feature = static_cast<int>(f);
                                b.threshold = state.prev + (v - state.prev) / 2.0;
                            }
                        }
                        state.g += grad[r];
                        state.h += hess[r];
                        ++state.count;
                        state.prev = v;
                        state.seen = true;
                    }
                }
            }

            // Materialize splits (or close leaves) for this level.
            std::vector<int> next_level;
            std::vector<NodeStats> next_totals;
            std::vector<bool> splits(level.size(), false);
            for (std::size_t i = 0; i < level.size(); ++i) {
                const int node_idx = level[i];
                const NodeStats& tot = totals[i];
                const NodeBest& b = best[i];
                bool can_split = !depth_capped && b.feature >= 0 && b.gain > kMinGain &&
                                 tot.count >= static_cast<std::size_t>(config_.min_samples_split);
                if (!can_split) {
                    model.nodes[node_idx].value = -tot.g / (tot.h + lambda);
                    continue;
                }
                splits[i] = true;
                model.nodes[node_idx].feature = b.feature;
                model.nodes[node_idx].threshold = b.threshold;
                model.nodes[node_idx].gain = b.gain;
                int left = static_cast<int>(model.nodes.size());
                model.nodes.emplace_back();
                int right = static_cast<int>(model.nodes.size());
                model.nodes.emplace_back();
                model.nodes[node_idx].left = left;
                model.nodes[node_idx].right = right;
                next_level.push_back(left);
                next_level.push_back(right);
                next_totals.emplace_back();
                next_totals.emplace_back();
            }

            // Route rows into the new children and refresh their stats.
            std::vector<int> next_slot(model.nodes.size(), -1);
            for (std::size_t i = 0; i < next_level.size(); ++i)
                next_slot[next_level[i]] = static_cast<int>(i);
            for (std::size_t r = 0; r < n_; ++r) {
                int node = node_of[r];
                int s = node >= 0 && node < static_cast<int>(slot.size()) ? slot[node] : -1;
                if (s < 0 || !splits[s]) {
                    node_of[r] = -1; // settled in a leaf
                    continue;
                }
                const TreeNode& parent = model.nodes[node];
                int child = x_[r][parent.feature] <= parent.threshold ? parent.left : parent.right;
                node_of[r] = child;
                NodeStats& stats = next_totals[next_slot[child]];
                stats.g += grad[r];
                stats.h += hess[r];
                ++stats.count;
                model.nodes[child].n_samples = stats.count;
            }

            level = std::move(next_level);
            totals = std::move(next_totals);
        }
        return model;
    }

private:
    const Matrix& x_;
    const std::vector<std::vector<std::size_t>>& sorted_;
    const TrainConfig& config_;
    const std::size_t n_;
    const std::size_t n_features_;
};

double mean_logistic_loss(const std::vector<double>& margin, const std::vector<int>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double p = sigmoid(margin[i]);
        p = std::clamp(p, 1e-15, 1.0 - 1e-15);
        loss -= y[i] == 1 ? std::log(p) : std::log(1.0 - p);
    }
    return loss / static_cast<double>(y.size());
}

} // namespace

BoostedModel train_gradient_boosting(const Matrix& x, const std::vector<int>& y,
                                     const TrainConfig& config,
                                     std::vector<double>* loss_trace) {
    if (x.empty())
        throw EmptyDataset("train_gradient_boosting: no rows");
    if (x.size() != y.size())
        throw DimensionMismatch("rows and labels differ in length");

    const std::size_t n = x.size();
    const std::size_t n_features = x.front().size();

    BoostedModel model;
    model.config = config;
    model.learning_rate = config.learning_rate;
    model.n_features = n_features;

    double pos = static_cast<double>(std::accumulate(y.begin(), y.end(), 0));
    double p0 = std::clamp(pos / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
    model.base_score = std::log(p0 / (1.0 - p0));

    std::vector<std::vector<std::size_t>> sorted(n_features);
    for (std::size_t f = 0; f < n_features; ++f) {
        sorted[f].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            sorted[f][i] = i;
        std::stable_sort(sorted[f].begin(), sorted[f].end(),
                         [&](std::size_t a, std::size_t b) { return x[a][f] < x[b][f]; });
    }

    RegressionTreeBuilder builder(x, sorted, config);
    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n), hess(n);
    if (loss_trace)
        loss_trace->clear();

    for (int round = 0; round < config.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(margin[i]);
            grad[i] = p - static_cast<double>(y[i]);
            hess[i] = std::max(p * (1.0 - p), 1e-16);
        }
        TreeModel tree = builder.build(grad, hess);
        for (std::size_t i = 0; i < n; ++i)
            margin[i] += config.learning_rate * tree.predict_value(x[i]);
        model.trees.push_back(std::move(tree));
        if (loss_trace)
            loss_trace->push_back(mean_logistic_loss(margin, y));
    }
    return model;
}

double predict_margin(const BoostedModel& model, std::span<const double> x) {
    if (x.size() != model.n_features)
        throw DimensionMismatch("boosted model expects " + std::to_string(model.n_features) +
                                " features, got " + std::to_string(x.size()));
    double margin = model.base_score;
    for (const TreeModel& tree : model.trees)
        margin += model.learning_rate * tree.predict_value(x);
    return margin;
}

double predict_score(const BoostedModel& model, std::span<const double> x) {
    return sigmoid(predict_margin(model, x));
}

int predict_label(const BoostedModel& model, std::span<const double> x) {
    double score = predict_score(model, x);
    if (score == 0.5)
        return model.config.tie_predict_malicious ? 1 : 0;
    return score > 0.5 ? 1 : 0;
}

std::vector<double> importance_vector(const BoostedModel& model) {
    std::vector<double> importance(model.n_features, 0.0);
    for (const TreeModel& tree : model.trees)
        for (const TreeNode& node : tree.nodes)
            if (!node.is_leaf())
                importance[node.feature] += node.gain;
    double total = 0.0;
    for (double v : importance)
        total += v;
    if (total > 0.0)
        for (double& v : importance)
            v /= total;
    return importance;
}

} // namespace zeekml::ml
