#pragma once

#include "zeekml/ml/config.hpp"
#include "zeekml/rng.hpp"

#include <span>
#include <vector>

namespace zeekml::ml {

struct LinearSvmModel {
    std::vector<double> weights;
    double bias = 0.0;
    bool trained_on_scaled = false;
    TrainConfig config;
};

// Primal soft-margin objective (1/2)||w||^2 + C * sum hinge(1 - y(w.x + b)),
// minimized by per-sample subgradient descent with step 1/(C*epoch) and a
// fixed shuffle per epoch from the seed. Labels arrive as {0,1} and are
// mapped to {-1,+1}. `input_standardized` records whether the caller scaled
// the rows; training proceeds either way but the flag is kept on the model
// so downstream consumers can warn. Throws EmptyDataset.
LinearSvmModel train_linear_svm(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, const TrainConfig& config,
                                bool input_standardized = true);

// Signed distance w.x + b; positive side is malicious.
double predict_score(const LinearSvmModel& model, std::span<const double> x);
// Label by sign; exactly zero resolves to benign unless configured.
int predict_label(const LinearSvmModel& model, std::span<const double> x);

// Primal objective value, exposed for optimality checks.
double svm_objective(const LinearSvmModel& model, const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, double c);

// |w_i| per feature (not normalized).
std::vector<double> importance_vector(const LinearSvmModel& model);

} // namespace zeekml::ml
