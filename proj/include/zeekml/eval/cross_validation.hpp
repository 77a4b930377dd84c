#pragma once

#include "zeekml/eval/metrics.hpp"
#include "zeekml/ml/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zeekml::eval {

// Stratified-by-label shuffled partition into n folds; sizes differ by at
// most one, globally and per class. Returns fold index per row. Throws
// TooFewRows when |rows| < n.
std::vector<int> k_fold_split(std::span<const int> labels, int n_folds, uint64_t seed,
                              bool stratified = true);

std::string fold_digest(std::span<const int> fold_of);

struct CvReport {
    std::string model_name;
    int n_folds = 0;
    uint64_t seed = 0;
    std::string folds_digest;
    std::vector<double> fold_accuracy;
    double mean_accuracy = 0.0;
    ConfusionCounts pooled_counts; // over all test folds
    Metrics pooled;
    RocCurve roc; // pooled test-fold scores
};

// Trains n_folds models, each on the complement of one fold, and pools the
// held-out predictions. Per-fold training seeds derive from `seed`.
CvReport cross_validate(const ml::Trainer& trainer, const ml::Matrix& x,
                        const std::vector<int>& y, int n_folds, uint64_t seed,
                        bool stratified = true);

} // namespace zeekml::eval
