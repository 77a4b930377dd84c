#pragma once

#include "zeekml/eval/cross_validation.hpp"

namespace zeekml::eval {

struct RfeResult {
    // Original feature indices, worst eliminated first.
    std::vector<int> elimination_order;
    // Best first; reverse of the elimination order, survivor at the front.
    std::vector<int> ranking;
    // accuracy_at_k[k-1] = fresh CV accuracy with the best k features alive.
    std::vector<double> accuracy_at_k;
    // Surviving original indices at each k (accuracy bookkeeping aid).
    std::vector<std::vector<int>> features_at_k;
};

struct RfeOptions {
    int n_folds = 10;
    uint64_t seed = 1;
    int step = 1; // features dropped per round
    bool stratified = true;
};

// Iteratively drops the lowest-importance feature: each round measures CV
// accuracy over the surviving columns, trains a ranking model on all rows,
// and eliminates the weakest (importance ties drop the highest index).
RfeResult rfe(const ml::Trainer& trainer, const ml::Matrix& x, const std::vector<int>& y,
              const RfeOptions& options);

// Column subset helper, exposed for reporting code.
ml::Matrix select_columns(const ml::Matrix& x, std::span<const int> columns);

} // namespace zeekml::eval
