#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace zeekml::ml {

enum class ModelKind { svm, forest, boosting };

std::string_view model_kind_name(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(std::string_view s);

enum class SplitCriterion { entropy, gini };
enum class FeatureBagMode { per_split, per_tree };

struct TrainConfig {
    uint64_t seed = 1;

    // Ensemble size: 500 for forests, 1000 for boosting.
    int n_estimators = 500;
    int max_depth = -1; // -1 = unlimited
    int min_samples_split = 2;

    // Forest: 0 means ceil(sqrt(n_features)); candidates resampled per split
    // unless per_tree is selected.
    int feature_bag_size = 0;
    FeatureBagMode feature_bag_mode = FeatureBagMode::per_split;
    bool bootstrap = true;
    SplitCriterion split_criterion = SplitCriterion::entropy;

    // Boosting.
    double learning_rate = 0.1;
    double l2_leaf_reg = 1.0;

    // Linear SVM.
    double svm_c = 1.0;
    int svm_epochs = 50;
    std::string svm_step_schedule = "1/(C*epoch)"; // the one supported schedule

    // A score exactly at the decision threshold predicts benign unless set.
    bool tie_predict_malicious = false;

    static TrainConfig forest_defaults();
    static TrainConfig boosting_defaults();
    static TrainConfig svm_defaults();
};

} // namespace zeekml::ml
