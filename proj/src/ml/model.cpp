#include "zeekml/ml/model.hpp"

namespace zeekml::ml {

std::unique_ptr<Model> ForestTrainer::train(const Matrix& x, const std::vector<int>& y,
                                            uint64_t seed) const {
    TrainConfig config = config_;
    config.seed = seed;
    auto out = std::make_unique<ForestClassifier>();
    out->model = train_random_forest(x, y, config, n_classes_);
    return out;
}

std::unique_ptr<Model> BoostingTrainer::train(const Matrix& x, const std::vector<int>& y,
                                              uint64_t seed) const {
    TrainConfig config = config_;
    config.seed = seed;
    auto out = std::make_unique<BoostedClassifier>();
    out->model = train_gradient_boosting(x, y, config);
    return out;
}

std::unique_ptr<Model> SvmTrainer::train(const Matrix& x, const std::vector<int>& y,
                                         uint64_t seed) const {
    TrainConfig config = config_;
    config.seed = seed;
    auto out = std::make_unique<SvmClassifier>();
    out->scaler = features::fit_scaler(x);
    Matrix scaled = features::apply_scaler(out->scaler, x);
    out->model = train_linear_svm(scaled, y, config, /*input_standardized=*/true);
    return out;
}

std::unique_ptr<Trainer> make_trainer(ModelKind kind, const TrainConfig& config) {
    switch (kind) {
    case ModelKind::forest: return std::make_unique<ForestTrainer>(config);
    case ModelKind::boosting: return std::make_unique<BoostingTrainer>(config);
    case ModelKind::svm: return std::make_unique<SvmTrainer>(config);
    }
    throw std::invalid_argument("unknown model kind");
}

} // namespace zeekml::ml
