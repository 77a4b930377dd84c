#include "zeekml/eval/multiclass.hpp"

#include "zeekml/errors.hpp"
#include "zeekml/rng.hpp"

#include <algorithm>
#include <set>

namespace zeekml::eval {

namespace {

struct FamilyRows {
    std::vector<std::string> families; // sorted, index = class id
    ml::Matrix x;
    std::vector<int> y; // class ids
};

FamilyRows collect_family_rows(const features::LabeledDataset& ds) {
    std::set<std::string> family_set;
    for (const auto& row : ds.rows)
        if (row.family)
            family_set.insert(*row.family);

    FamilyRows out;
    out.families.assign(family_set.begin(), family_set.end());
    for (const auto& row : ds.rows) {
        if (!row.family)
            continue;
        auto it = std::lower_bound(out.families.begin(), out.families.end(), *row.family);
        out.x.emplace_back(row.features.values.begin(), row.features.values.end());
        out.y.push_back(static_cast<int>(it - out.families.begin()));
    }
    return out;
}

int reduce_folds(int requested, std::size_t smallest_class, std::vector<std::string>& warnings,
                 const std::string& what) {
    int folds = requested;
    if (smallest_class < static_cast<std::size_t>(requested)) {
        folds = static_cast<int>(smallest_class);
        warnings.push_back(what + ": smallest family has " + std::to_string(smallest_class) +
                           " rows, folds reduced to " + std::to_string(folds));
    }
    if (folds < 2)
        throw TooFewRows(what + ": a family has fewer than 2 rows");
    return folds;
}

// Plain multiclass CV accuracy; forest predicts natively, SVM and boosting go
// one-vs-rest with argmax over per-class scores.
std::pair<double, std::vector<double>> multiclass_cv(const ml::Matrix& x,
                                                     const std::vector<int>& y, int n_classes,
                                                     ml::ModelKind kind,
                                                     const ml::TrainConfig& config, int n_folds,
                                                     uint64_t seed) {
    std::vector<int> fold_of = k_fold_split(y, n_folds, seed, /*stratified=*/true);
    std::vector<double> fold_accuracy;

    for (int fold = 0; fold < n_folds; ++fold) {
        ml::Matrix train_x;
        std::vector<int> train_y;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fold_of[i] == fold)
                test_rows.push_back(i);
            else {
                train_x.push_back(x[i]);
                train_y.push_back(y[i]);
            }
        }
        uint64_t fold_seed = fnv1a64("multiclass-fold-" + std::to_string(fold), seed);

        std::size_t correct = 0;
        if (kind == ml::ModelKind::forest) {
            ml::TrainConfig c = config;
            c.seed = fold_seed;
            ml::ForestModel model = ml::train_random_forest(train_x, train_y, c, n_classes);
            for (std::size_t i : test_rows)
                if (ml::predict_label(model, x[i]) == y[i])
                    ++correct;
        } else {
            // One-vs-rest: k binary models, argmax of scores.
            std::vector<std::unique_ptr<ml::Model>> members;
            auto trainer = ml::make_trainer(kind, config);
            for (int cls = 0; cls < n_classes; ++cls) {
                std::vector<int> binary(train_y.size());
                for (std::size_t i = 0; i < train_y.size(); ++i)
                    binary[i] = train_y[i] == cls ? 1 : 0;
                members.push_back(trainer->train(
                    train_x, binary, fnv1a64("ovr-" + std::to_string(cls), fold_seed)));
            }
            for (std::size_t i : test_rows) {
                int best = 0;
                double best_score = members[0]->score(x[i]);
                for (int cls = 1; cls < n_classes; ++cls) {
                    double s = members[cls]->score(x[i]);
                    if (s > best_score) {
                        best_score = s;
                        best = cls;
                    }
                }
                if (best == y[i])
                    ++correct;
            }
        }
        fold_accuracy.push_back(test_rows.empty()
                                    ? 0.0
                                    : static_cast<double>(correct) /
                                          static_cast<double>(test_rows.size()));
    }
    double mean = 0.0;
    for (double a : fold_accuracy)
        mean += a;
    mean /= static_cast<double>(n_folds);
    return {mean, fold_accuracy};
}

} // namespace

MulticlassReport multiclass_experiment(const features::LabeledDataset& ds, ml::ModelKind kind,
                                       const ml::TrainConfig& config, int n_folds,
                                       uint64_t seed) {
    FamilyRows rows = collect_family_rows(ds);
    if (rows.families.size() < 2)
        throw MissingFamilyLabels("multiclass experiment needs at least two families");

    MulticlassReport report;
    report.families = rows.families;
    for (int cls : rows.y)
        ++report.family_counts[rows.families[static_cast<std::size_t>(cls)]];

    const int n_classes = static_cast<int>(rows.families.size());
    for (int a = 0; a < n_classes; ++a) {
        for (int b = a + 1; b < n_classes; ++b) {
            ml::Matrix pair_x;
            std::vector<int> pair_y;
            for (std::size_t i = 0; i < rows.y.size(); ++i) {
                if (rows.y[i] == a || rows.y[i] == b) {
                    pair_x.push_back(rows.x[i]);
                    pair_y.push_back(rows.y[i] == b ? 1 : 0);
                }
            }
            std::size_t n_a = static_cast<std::size_t>(std::count(pair_y.begin(), pair_y.end(), 0));
            std::size_t n_b = pair_y.size() - n_a;

            PairwiseReport pr;
            pr.family_a = rows.families[a];
            pr.family_b = rows.families[b];
            pr.n_folds = reduce_folds(n_folds, std::min(n_a, n_b), report.warnings,
                                      pr.family_a + " vs " + pr.family_b);
            auto trainer = ml::make_trainer(kind, config);
            CvReport cv = cross_validate(*trainer, pair_x, pair_y, pr.n_folds,
                                         fnv1a64(pr.family_a + "|" + pr.family_b, seed));
            pr.mean_accuracy = cv.mean_accuracy;
            pr.fold_accuracy = cv.fold_accuracy;
            report.pairwise.push_back(std::move(pr));
        }
    }

    std::size_t smallest = rows.y.size();
    for (const auto& [family, count] : report.family_counts)
        smallest = std::min(smallest, count);
    report.all_family_folds = reduce_folds(n_folds, smallest, report.warnings, "all-family");
    auto [mean, folds] = multiclass_cv(rows.x, rows.y, n_classes, kind, config,
                                       report.all_family_folds, fnv1a64("all-family", seed));
    report.all_family_accuracy = mean;
    report.all_family_fold_accuracy = folds;
    return report;
}

} // namespace zeekml::eval
