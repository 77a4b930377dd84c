#include "zeekml/eval/metrics.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <numeric>

namespace zeekml::eval {

ConfusionCounts count_confusion(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size())
        throw DimensionMismatch("prediction and label vectors differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i] == 1)
            predicted[i] == 1 ? ++c.tp : ++c.fn;
        else
            predicted[i] == 1 ? ++c.fp : ++c.tn;
    }
    return c;
}

double accuracy(const ConfusionCounts& c) {
    if (c.total() == 0)
        throw EmptyCounts("no scored rows");
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

Metrics compute_metrics(const ConfusionCounts& c) {
    Metrics m;
    m.accuracy = accuracy(c);
    if (c.tp + c.fp > 0) {
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        m.precision_defined = true;
    }
    if (c.tp + c.fn > 0) {
        m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        m.recall_defined = true;
    }
    if (m.precision_defined && m.recall_defined && m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
        m.f1_defined = true;
    }
    return m;
}

RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw DimensionMismatch("scores and labels differ in length");
    std::size_t n_pos = 0, n_neg = 0;
    for (int y : labels)
        y == 1 ? ++n_pos : ++n_neg;
    if (n_pos == 0 || n_neg == 0)
        throw SingleClassError("ROC needs both classes present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        // One step per distinct score value.
        const double value = scores[order[i]];
        while (i < order.size() && scores[order[i]] == value) {
            labels[order[i]] == 1 ? ++tp : ++fp;
            ++i;
        }
        double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        curve.points.push_back({fpr, tpr});
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    curve.auc = auc;
    return curve;
}

} // namespace zeekml::eval
