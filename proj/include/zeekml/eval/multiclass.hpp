#pragma once

#include "zeekml/dataset_io.hpp"
#include "zeekml/eval/cross_validation.hpp"

#include <map>
#include <string>
#include <vector>

namespace zeekml::eval {

struct PairwiseReport {
    std::string family_a;
    std::string family_b;
    int n_folds = 0;
    double mean_accuracy = 0.0;
    std::vector<double> fold_accuracy;
};

struct MulticlassReport {
    std::vector<std::string> families; // sorted
    std::map<std::string, std::size_t> family_counts;
    std::vector<PairwiseReport> pairwise; // all C(k,2) pairs
    double all_family_accuracy = 0.0;     // CV accuracy of the joint model
    std::vector<double> all_family_fold_accuracy;
    int all_family_folds = 0;
    std::vector<std::string> warnings; // e.g. reduced fold counts
};

// Family classification over the rows that carry a family label: one binary
// model per family pair plus one all-family model (native multiclass leaf
// distributions for the forest, one-vs-rest for SVM and boosting). Folds are
// reduced with a warning when the smallest family is below n_folds. Throws
// MissingFamilyLabels with fewer than two families.
MulticlassReport multiclass_experiment(const features::LabeledDataset& ds, ml::ModelKind kind,
                                       const ml::TrainConfig& config, int n_folds, uint64_t seed);

} // namespace zeekml::eval
