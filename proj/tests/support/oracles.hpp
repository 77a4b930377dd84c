#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here is deliberately written the slow, obvious way and stays
// decoupled from the library code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace oracle {

// AUC as the probability that a random positive outscores a random negative,
// ties worth half a pair.
inline double auc_pair_count(std::span<const double> scores, std::span<const int> labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1)
            continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] == 1)
                continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

struct BruteMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_defined = false;
    bool recall_defined = false;
    bool f1_defined = false;
};

// Metric recomputation straight from (prediction, label) pairs.
inline BruteMetrics metrics_from_pairs(std::span<const int> predicted,
                                       std::span<const int> actual) {
    std::size_t correct = 0, pred_pos = 0, act_pos = 0, true_pos = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == actual[i])
            ++correct;
        if (predicted[i] == 1)
            ++pred_pos;
        if (actual[i] == 1)
            ++act_pos;
        if (predicted[i] == 1 && actual[i] == 1)
            ++true_pos;
    }
    BruteMetrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(predicted.size());
    if (pred_pos > 0) {
        m.precision = static_cast<double>(true_pos) / static_cast<double>(pred_pos);
        m.precision_defined = true;
    }
    if (act_pos > 0) {
        m.recall = static_cast<double>(true_pos) / static_cast<double>(act_pos);
        m.recall_defined = true;
    }
    if (m.precision_defined && m.recall_defined && m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
        m.f1_defined = true;
    }
    return m;
}

inline double entropy2(std::size_t a, std::size_t b) {
    const std::size_t n = a + b;
    if (n == 0)
        return 0.0;
    double h = 0.0;
    for (std::size_t c : {a, b}) {
        if (c == 0)
            continue;
        double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    return h;
}

// Information gain of a binary-label split at `threshold` on `feature`,
// restricted to `rows` (x[r][feature] <= threshold goes left).
inline double split_gain(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         std::span<const std::size_t> rows, int feature, double threshold) {
    std::size_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    for (std::size_t r : rows) {
        bool left = x[r][static_cast<std::size_t>(feature)] <= threshold;
        if (y[r] == 1)
            left ? ++l1 : ++r1;
        else
            left ? ++l0 : ++r0;
    }
    const std::size_t nl = l0 + l1, nr = r0 + r1, n = nl + nr;
    double parent = entropy2(l0 + r0, l1 + r1);
    double child = 0.0;
    if (nl)
        child += (static_cast<double>(nl) / n) * entropy2(l0, l1);
    if (nr)
        child += (static_cast<double>(nr) / n) * entropy2(r0, r1);
    return parent - child;
}

struct CandidateSplit {
    int feature;
    double threshold;
    double gain;
};

// Every midpoint threshold between consecutive distinct values, per feature.
inline std::vector<CandidateSplit> all_splits(const std::vector<std::vector<double>>& x,
                                              const std::vector<int>& y,
                                              std::span<const std::size_t> rows) {
    std::vector<CandidateSplit> out;
    if (rows.empty())
        return out;
    const std::size_t dim = x.front().size();
    for (std::size_t f = 0; f < dim; ++f) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (std::size_t r : rows)
            values.push_back(x[r][f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            double threshold = values[i] + (values[i + 1] - values[i]) / 2.0;
            out.push_back({static_cast<int>(f), threshold,
                           split_gain(x, y, rows, static_cast<int>(f), threshold)});
        }
    }
    return out;
}

// Exhaustive best training accuracy of any depth<=2 threshold tree.
inline double best_depth2_accuracy(const std::vector<std::vector<double>>& x,
                                   const std::vector<int>& y) {
    std::vector<std::size_t> rows(x.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;

    auto majority_correct = [&](std::span<const std::size_t> subset) -> std::size_t {
        std::size_t ones = 0;
        for (std::size_t r : subset)
            ones += static_cast<std::size_t>(y[r] == 1);
        return std::max(ones, subset.size() - ones);
    };

    auto best_leaf_pair = [&](std::span<const std::size_t> subset) -> std::size_t {
        std::size_t best = majority_correct(subset);
        for (const CandidateSplit& s : all_splits(x, y, subset)) {
            std::vector<std::size_t> left, right;
            for (std::size_t r : subset)
                (x[r][static_cast<std::size_t>(s.feature)] <= s.threshold ? left : right)
                    .push_back(r);
            best = std::max(best, majority_correct(left) + majority_correct(right));
        }
        return best;
    };

    std::size_t best = best_leaf_pair(rows);
    for (const CandidateSplit& s : all_splits(x, y, rows)) {
        std::vector<std::size_t> left, right;
        for (std::size_t r : rows)
            (x[r][static_cast<std::size_t>(s.feature)] <= s.threshold ? left : right).push_back(r);
        best = std::max(best, best_leaf_pair(left) + best_leaf_pair(right));
    }
    return static_cast<double>(best) / static_cast<double>(x.size());
}

// Grid search over (w, b) for the primal soft-margin objective on 1-D or 2-D
// inputs. Returns the best objective found.
inline double svm_grid_objective(const std::vector<std::vector<double>>& x,
                                 const std::vector<int>& y, double c, double span, int steps) {
    const std::size_t dim = x.front().size();
    auto objective = [&](std::span<const double> w, double b) {
        double obj = 0.0;
        for (double wi : w)
            obj += 0.5 * wi * wi;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double margin = b;
            for (std::size_t j = 0; j < dim; ++j)
                margin += w[j] * x[i][j];
            margin *= y[i] == 1 ? 1.0 : -1.0;
            obj += c * std::max(0.0, 1.0 - margin);
        }
        return obj;
    };

    double best = std::numeric_limits<double>::max();
    auto grid_value = [&](int k) { return -span + 2.0 * span * k / (steps - 1); };
    if (dim == 1) {
        for (int a = 0; a < steps; ++a)
            for (int bi = 0; bi < steps; ++bi) {
                double w[1] = {grid_value(a)};
                best = std::min(best, objective(w, grid_value(bi)));
            }
    } else {
        for (int a = 0; a < steps; ++a)
            for (int b2 = 0; b2 < steps; ++b2)
                for (int bi = 0; bi < steps; ++bi) {
                    double w[2] = {grid_value(a), grid_value(b2)};
                    best = std::min(best, objective(w, grid_value(bi)));
                }
    }
    return best;
}

// Two-pass covariance Pearson, independent of the library's implementation.
inline double pearson_two_pass(std::span<const double> a, std::span<const double> b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

} // namespace oracle
