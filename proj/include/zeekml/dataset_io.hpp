#pragma once

#include "zeekml/feature_extractor.hpp"

#include <string>
#include <vector>

namespace zeekml::features {

// Feature matrix / label views used by every trainer and evaluator.
std::vector<std::vector<double>> feature_matrix(const LabeledDataset& ds);
std::vector<int> binary_labels(const LabeledDataset& ds); // benign=0, malicious=1

// CSV: header row of the 38 feature names + label + family + key. Doubles are
// written with shortest round-trip formatting so re-reading is exact.
void write_dataset_csv(const std::string& path, const LabeledDataset& ds);
LabeledDataset read_dataset_csv(const std::string& path);

// JSON-lines variant: one object per row.
void write_dataset_jsonl(const std::string& path, const LabeledDataset& ds);

std::string format_double(double v);
double parse_double(const std::string& s);

} // namespace zeekml::features
