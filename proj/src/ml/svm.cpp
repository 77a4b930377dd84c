#include "zeekml/ml/svm.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeekml::ml {

LinearSvmModel train_linear_svm(const std::vector<std::vector<double>>& x,
                                const std::vector<int>& y, const TrainConfig& config,
                                bool input_standardized) {
    if (x.empty())
        throw EmptyDataset("train_linear_svm: no rows");
    if (x.size() != y.size())
        throw DimensionMismatch("rows and labels differ in length");
    if (config.svm_step_schedule != "1/(C*epoch)")
        throw std::invalid_argument("unsupported svm_step_schedule: " + config.svm_step_schedule);

    const std::size_t n = x.size();
    const std::size_t dim = x.front().size();
    const double c = config.svm_c;
    const double inv_n = 1.0 / static_cast<double>(n);

    LinearSvmModel model;
    model.config = config;
    model.trained_on_scaled = input_standardized;
    model.weights.assign(dim, 0.0);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;

    Rng rng = derive_rng(config.seed, "svm-shuffle");
    for (int epoch = 1; epoch <= config.svm_epochs; ++epoch) {
        const double step = 1.0 / (c * static_cast<double>(epoch));
        rng.shuffle(order);
        for (std::size_t idx : order) {
            const std::vector<double>& row = x[idx];
            const double label = y[idx] == 1 ? 1.0 : -1.0;
            double margin = model.bias;
            for (std::size_t j = 0; j < dim; ++j)
                margin += model.weights[j] * row[j];
            margin *= label;

            // Regularizer pull is split across the n per-sample updates of
            // one epoch; the hinge subgradient fires only on violations.
            const double decay = 1.0 - step * inv_n;
            for (std::size_t j = 0; j < dim; ++j)
                model.weights[j] *= decay;
            if (margin < 1.0) {
                const double push = step * c * label;
                for (std::size_t j = 0; j < dim; ++j)
                    model.weights[j] += push * row[j];
                model.bias += push;
            }
        }
    }
    return model;
}

double predict_score(const LinearSvmModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size())
        throw DimensionMismatch("svm expects " + std::to_string(model.weights.size()) +
                                " features, got " + std::to_string(x.size()));
    double score = model.bias;
    for (std::size_t j = 0; j < x.size(); ++j)
        score += model.weights[j] * x[j];
    return score;
}

int predict_label(const LinearSvmModel& model, std::span<const double> x) {
    double score = predict_score(model, x);
    if (score == 0.0)
        return model.config.tie_predict_malicious ? 1 : 0;
    return score > 0.0 ? 1 : 0;
}

double svm_objective(const LinearSvmModel& model, const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, double c) {
    double obj = 0.0;
    for (double w : model.weights)
        obj += 0.5 * w * w;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double label = y[i] == 1 ? 1.0 : -1.0;
        double margin = label * predict_score(model, x[i]);
        obj += c * std::max(0.0, 1.0 - margin);
    }
    return obj;
}

std::vector<double> importance_vector(const LinearSvmModel& model) {
    std::vector<double> imp(model.weights.size());
    for (std::size_t j = 0; j < imp.size(); ++j)
        imp[j] = std::abs(model.weights[j]);
    return imp;
}

} // namespace zeekml::ml
