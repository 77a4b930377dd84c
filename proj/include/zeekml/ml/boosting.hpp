#pragma once

#include "zeekml/ml/tree.hpp"

namespace zeekml::ml {

// Stagewise regression trees fit to the gradients/hessians of logistic loss,
// with Newton leaf values -G/(H + lambda). score(x) in log-odds space is
// base_score + learning_rate * sum of tree outputs.
struct BoostedModel {
    std::vector<TreeModel> trees; // regression trees (real-valued leaves)
    double learning_rate = 0.1;
    double base_score = 0.0; // log-odds prior
    std::size_t n_features = 0;
    TrainConfig config;
};

// Labels must be in {0,1}. When loss_trace is non-null it receives the mean
// training logistic loss after every round (n_estimators entries). Throws
// EmptyDataset.
BoostedModel train_gradient_boosting(const Matrix& x, const std::vector<int>& y,
                                     const TrainConfig& config,
                                     std::vector<double>* loss_trace = nullptr);

double predict_margin(const BoostedModel& model, std::span<const double> x);
double predict_score(const BoostedModel& model, std::span<const double> x); // sigmoid
int predict_label(const BoostedModel& model, std::span<const double> x);

// Total split-gain importance normalized to sum 1.
std::vector<double> importance_vector(const BoostedModel& model);

double sigmoid(double z);

} // namespace zeekml::ml
