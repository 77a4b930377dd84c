#pragma once

#include "zeekml/eval/rfe.hpp"
#include "zeekml/ml/config.hpp"
#include "zeekml/synth.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace zeekml::cli {

// Command implementations behind the CLI, callable in-process from tests.
// Each writes its artifacts under out_dir and returns a process exit code:
// nonzero only when errors occurred and no primary artifact was produced.

struct ExtractArgs {
    std::filesystem::path manifest;
    std::filesystem::path out_dir = "out";
};
int cmd_extract(const ExtractArgs& args);

struct TrainEvalArgs {
    std::filesystem::path features_csv; // defaults to out_dir/features.csv
    std::filesystem::path out_dir = "out";
    ml::ModelKind model = ml::ModelKind::forest;
    std::optional<int> n_estimators;
    std::optional<int> max_depth;
    int n_folds = 10;
    uint64_t seed = 1;
};
int cmd_train_eval(const TrainEvalArgs& args);

struct RfeArgs {
    std::filesystem::path features_csv;
    std::filesystem::path out_dir = "out";
    ml::ModelKind model = ml::ModelKind::forest;
    std::optional<int> n_estimators;
    int n_folds = 10;
    int step = 1;
    uint64_t seed = 1;
};
int cmd_rfe(const RfeArgs& args);

struct CorrelateArgs {
    std::filesystem::path features_csv;
    std::filesystem::path out_dir = "out";
};
int cmd_correlate(const CorrelateArgs& args);

struct MulticlassArgs {
    std::filesystem::path features_csv;
    std::filesystem::path out_dir = "out";
    ml::ModelKind model = ml::ModelKind::forest;
    std::optional<int> n_estimators;
    int n_folds = 10;
    uint64_t seed = 1;
};
int cmd_multiclass(const MulticlassArgs& args);

struct BoostDemoArgs {
    std::filesystem::path out_dir = "out";
    int pool_size = 1000;
    int sample_count = 200; // fixed sample-set size the weak pool labels
    int iterations = 200;
    std::vector<int> l_values = {250, 500, 1000};
    uint64_t seed = 1;
};
int cmd_boost_demo(const BoostDemoArgs& args);

struct SynthArgs {
    synth::SynthSpec spec;
    std::filesystem::path out_dir = "out";
};
int cmd_synth(const SynthArgs& args);

// Shared helper: effective training config for a model kind with optional
// overrides applied.
ml::TrainConfig effective_config(ml::ModelKind kind, std::optional<int> n_estimators,
                                 std::optional<int> max_depth, uint64_t seed);

} // namespace zeekml::cli
