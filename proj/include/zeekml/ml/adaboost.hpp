#pragma once

#include "zeekml/rng.hpp"

#include <cstdint>
#include <vector>

namespace zeekml::ml {

// A pool of deterministic weak classifiers over one fixed labeled sample set.
// Each classifier is a full +-1 labeling with accuracy inside [acc_lo, acc_hi].
struct WeakClassifierPool {
    std::vector<int8_t> truth;                 // +-1 per sample
    std::vector<std::vector<int8_t>> outputs;  // [classifier][sample]
    std::vector<double> accuracy;              // fraction correct per classifier
};

// Randomly generated pool: each classifier flips the truth on a random subset
// sized to land its accuracy in the band.
WeakClassifierPool make_weak_pool(int n_classifiers, int n_samples, double acc_lo, double acc_hi,
                                  Rng& rng);

struct BoostDemoCurve {
    std::vector<double> accuracy; // ensemble accuracy after each round
    std::vector<int> picked;      // classifier chosen per round
    std::vector<double> alpha;    // its vote weight
};

// Adaptive boosting over the first L pool members: per round pick the
// classifier with minimum weighted error, weight it alpha = 0.5*ln((1-e)/e),
// reweight the samples and record the ensemble accuracy. Throws
// DegenerateError when a selected error hits exactly 0 or 1.
BoostDemoCurve adaboost_demo(const WeakClassifierPool& pool, int l, int iterations);

} // namespace zeekml::ml
