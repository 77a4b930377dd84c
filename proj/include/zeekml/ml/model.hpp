#pragma once

#include "zeekml/feature_extractor.hpp"
#include "zeekml/ml/boosting.hpp"
#include "zeekml/ml/forest.hpp"
#include "zeekml/ml/svm.hpp"

#include <memory>
#include <span>
#include <string_view>

namespace zeekml::ml {

// Trained classifier behind a uniform surface so cross-validation, RFE and
// the multiclass experiments stay model-agnostic.
class Model {
public:
    virtual ~Model() = default;
    // Binary decision score: P(malicious) for tree ensembles, signed distance
    // for the SVM.
    virtual double score(std::span<const double> x) const = 0;
    virtual int predict(std::span<const double> x) const = 0;
    virtual std::vector<double> importance() const = 0;
    virtual std::size_t n_features() const = 0;
    virtual ModelKind kind() const = 0;
};

class Trainer {
public:
    virtual ~Trainer() = default;
    virtual std::unique_ptr<Model> train(const Matrix& x, const std::vector<int>& y,
                                         uint64_t seed) const = 0;
    virtual ModelKind kind() const = 0;
    std::string_view name() const { return model_kind_name(kind()); }
};

class ForestTrainer : public Trainer {
public:
    explicit ForestTrainer(TrainConfig config = TrainConfig::forest_defaults(), int n_classes = 2)
        : config_(config), n_classes_(n_classes) {}
    std::unique_ptr<Model> train(const Matrix& x, const std::vector<int>& y,
                                 uint64_t seed) const override;
    ModelKind kind() const override { return ModelKind::forest; }

private:
    TrainConfig config_;
    int n_classes_;
};

class BoostingTrainer : public Trainer {
public:
    explicit BoostingTrainer(TrainConfig config = TrainConfig::boosting_defaults())
        : config_(config) {}
    std::unique_ptr<Model> train(const Matrix& x, const std::vector<int>& y,
                                 uint64_t seed) const override;
    ModelKind kind() const override { return ModelKind::boosting; }

private:
    TrainConfig config_;
};

// Fits a scaler on its own training rows and bakes it into the model, so
// fold hygiene holds under cross-validation.
class SvmTrainer : public Trainer {
public:
    explicit SvmTrainer(TrainConfig config = TrainConfig::svm_defaults()) : config_(config) {}
    std::unique_ptr<Model> train(const Matrix& x, const std::vector<int>& y,
                                 uint64_t seed) const override;
    ModelKind kind() const override { return ModelKind::svm; }

private:
    TrainConfig config_;
};

std::unique_ptr<Trainer> make_trainer(ModelKind kind, const TrainConfig& config);

// Concrete payload access for serialization and reporting.
struct ForestClassifier;
struct BoostedClassifier;
struct SvmClassifier;

struct ForestClassifier final : Model {
    ForestModel model;
    double score(std::span<const double> x) const override { return predict_score(model, x); }
    int predict(std::span<const double> x) const override { return predict_label(model, x); }
    std::vector<double> importance() const override { return importance_vector(model); }
    std::size_t n_features() const override { return model.n_features; }
    ModelKind kind() const override { return ModelKind::forest; }
};

struct BoostedClassifier final : Model {
    BoostedModel model;
    double score(std::span<const double> x) const override { return predict_score(model, x); }
    int predict(std::span<const double> x) const override { return predict_label(model, x); }
    std::vector<double> importance() const override { return importance_vector(model); }
    std::size_t n_features() const override { return model.n_features; }
    ModelKind kind() const override { return ModelKind::boosting; }
};

struct SvmClassifier final : Model {
    LinearSvmModel model;
    features::ScalerParams scaler;
    double score(std::span<const double> x) const override {
        return predict_score(model, features::apply_scaler(scaler, x));
    }
    int predict(std::span<const double> x) const override {
        return predict_label(model, features::apply_scaler(scaler, x));
    }
    std::vector<double> importance() const override { return importance_vector(model); }
    std::size_t n_features() const override { return model.weights.size(); }
    ModelKind kind() const override { return ModelKind::svm; }
};

} // namespace zeekml::ml
