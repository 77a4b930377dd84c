#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zeekml::eval {

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t tn = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;

    uint64_t total() const { return tp + tn + fp + fn; }
};

ConfusionCounts count_confusion(std::span<const int> predicted, std::span<const int> actual);

// Throws EmptyCounts when no rows were scored.
double accuracy(const ConfusionCounts& c);

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Degenerate denominators define the metric as 0 and clear the flag.
    bool precision_defined = false;
    bool recall_defined = false;
    bool f1_defined = false;
};

Metrics compute_metrics(const ConfusionCounts& c);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// Threshold sweep over distinct scores, descending; tied scores collapse into
// one step, which makes trapezoidal AUC equal to pair-counting with half
// credit for ties. Starts at (0,0) and ends at (1,1).
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

// Throws SingleClassError unless both classes are present.
RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> labels);

} // namespace zeekml::eval
