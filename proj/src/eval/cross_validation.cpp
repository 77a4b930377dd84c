#include "zeekml/eval/cross_validation.hpp"

#include "zeekml/errors.hpp"
#include "zeekml/rng.hpp"

#include <algorithm>
#include <map>

namespace zeekml::eval {

std::vector<int> k_fold_split(std::span<const int> labels, int n_folds, uint64_t seed,
                              bool stratified) {
    const std::size_t n = labels.size();
    if (n_folds < 2)
        throw std::invalid_argument("need at least 2 folds");
    if (n < static_cast<std::size_t>(n_folds))
        throw TooFewRows("fewer rows than folds");

    Rng rng = derive_rng(seed, "k-fold");
    std::vector<int> fold_of(n, -1);

    if (!stratified) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i)
            order[i] = i;
        rng.shuffle(order);
        for (std::size_t i = 0; i < n; ++i)
            fold_of[order[i]] = static_cast<int>(i % n_folds);
        return fold_of;
    }

    // Deal each class round-robin, carrying the fold cursor across classes so
    // global sizes stay within one of each other too.
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i)
        by_class[labels[i]].push_back(i);
    int cursor = 0;
    for (auto& [cls, members] : by_class) {
        rng.shuffle(members);
        for (std::size_t i : members) {
            fold_of[i] = cursor;
            cursor = (cursor + 1) % n_folds;
        }
    }
    return fold_of;
}

std::string fold_digest(std::span<const int> fold_of) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int f : fold_of) {
        h ^= static_cast<uint64_t>(static_cast<uint32_t>(f));
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CvReport cross_validate(const ml::Trainer& trainer, const ml::Matrix& x,
                        const std::vector<int>& y, int n_folds, uint64_t seed,
                        bool stratified) {
    if (x.size() != y.size())
        throw DimensionMismatch("rows and labels differ in length");

    std::vector<int> fold_of = k_fold_split(y, n_folds, seed, stratified);

    CvReport report;
    report.model_name = std::string(trainer.name());
    report.n_folds = n_folds;
    report.seed = seed;
    report.folds_digest = fold_digest(fold_of);

    std::vector<double> pooled_scores;
    std::vector<int> pooled_labels, pooled_pred;
    pooled_scores.reserve(y.size());
    pooled_labels.reserve(y.size());
    pooled_pred.reserve(y.size());

    for (int fold = 0; fold < n_folds; ++fold) {
        ml::Matrix train_x;
        std::vector<int> train_y;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fold_of[i] == fold) {
                test_rows.push_back(i);
            } else {
                train_x.push_back(x[i]);
                train_y.push_back(y[i]);
            }
        }
        uint64_t fold_seed = fnv1a64("cv-fold-" + std::to_string(fold), seed);
        auto model = trainer.train(train_x, train_y, fold_seed);

        ConfusionCounts fold_counts;
        for (std::size_t i : test_rows) {
            int pred = model->predict(x[i]);
            double score = model->score(x[i]);
            pooled_scores.push_back(score);
            pooled_labels.push_back(y[i]);
            pooled_pred.push_back(pred);
            if (y[i] == 1)
                pred == 1 ? ++fold_counts.tp : ++fold_counts.fn;
            else
                pred == 1 ? ++fold_counts.fp : ++fold_counts.tn;
        }
        report.fold_accuracy.push_back(accuracy(fold_counts));
        report.pooled_counts.tp += fold_counts.tp;
        report.pooled_counts.tn += fold_counts.tn;
        report.pooled_counts.fp += fold_counts.fp;
        report.pooled_counts.fn += fold_counts.fn;
    }

    double total = 0.0;
    for (double a : report.fold_accuracy)
        total += a;
    report.mean_accuracy = total / static_cast<double>(n_folds);
    report.pooled = compute_metrics(report.pooled_counts);
    report.roc = roc_and_auc(pooled_scores, pooled_labels);
    return report;
}

} // namespace zeekml::eval
