#include "zeekml/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using zeekml::cli::BoostDemoArgs;
using zeekml::cli::CorrelateArgs;
using zeekml::cli::ExtractArgs;
using zeekml::cli::MulticlassArgs;
using zeekml::cli::RfeArgs;
using zeekml::cli::SynthArgs;
using zeekml::cli::TrainEvalArgs;

// Shared option state, seeded from --config (JSON) before flags override.
struct Options {
    std::string manifest;
    std::string out = "out";
    std::string features;
    std::string model = "forest";
    int folds = 10;
    uint64_t seed = 1;
    int estimators = -1; // <0 = model default
    int max_depth = -2;  // -2 = model default, -1 = unlimited
    int rfe_step = 1;
    // synth knobs
    int n_benign = 1000;
    int n_malicious = 1000;
    int min_flows = 3;
    int max_flows = 12;
};

void apply_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    opt.manifest = j.value("manifest", opt.manifest);
    opt.out = j.value("out", opt.out);
    opt.features = j.value("features", opt.features);
    opt.model = j.value("model", opt.model);
    opt.folds = j.value("folds", opt.folds);
    opt.seed = j.value("seed", opt.seed);
    opt.estimators = j.value("estimators", opt.estimators);
    opt.max_depth = j.value("max_depth", opt.max_depth);
    opt.rfe_step = j.value("rfe_step", opt.rfe_step);
    if (j.contains("synth")) {
        const auto& s = j.at("synth");
        opt.n_benign = s.value("n_benign", opt.n_benign);
        opt.n_malicious = s.value("n_malicious", opt.n_malicious);
        opt.min_flows = s.value("min_flows", opt.min_flows);
        opt.max_flows = s.value("max_flows", opt.max_flows);
    }
}

zeekml::ml::ModelKind parse_model(const std::string& name) {
    auto kind = zeekml::ml::model_kind_from_string(name);
    if (!kind)
        throw CLI::ValidationError("--model", "expected svm, forest or boosting");
    return *kind;
}

std::optional<int> opt_estimators(const Options& opt) {
    return opt.estimators >= 0 ? std::optional<int>(opt.estimators) : std::nullopt;
}

std::optional<int> opt_depth(const Options& opt) {
    return opt.max_depth >= -1 ? std::optional<int>(opt.max_depth) : std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Encrypted-traffic classification toolkit over Zeek logs"};
    app.require_subcommand(1);

    Options opt;

    // --config seeds defaults; explicit flags win.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(argv[i + 1], opt);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (applied before flags)");

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        cmd->add_option("--config", config_path, "JSON config file (applied before flags)");
        cmd->add_option("--out", opt.out, "output directory");
        cmd->add_option("--seed", opt.seed, "master seed");
        if (with_model) {
            cmd->add_option("--model", opt.model, "svm|forest|boosting");
            cmd->add_option("--folds", opt.folds, "cross-validation folds");
            cmd->add_option("--estimators", opt.estimators, "ensemble size override");
            cmd->add_option("--max-depth", opt.max_depth, "tree depth cap (-1 unlimited)");
            cmd->add_option("--features", opt.features, "feature CSV path");
        }
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic Zeek log triple");
    add_common(synth, false);
    synth->add_option("--benign", opt.n_benign, "benign aggregates");
    synth->add_option("--malicious", opt.n_malicious, "malicious aggregates");
    synth->add_option("--min-flows", opt.min_flows, "min flows per aggregate");
    synth->add_option("--max-flows", opt.max_flows, "max flows per aggregate");

    CLI::App* extract = app.add_subcommand("extract", "parse logs and emit the feature CSV");
    add_common(extract, false);
    extract->add_option("--manifest", opt.manifest, "dataset manifest")->required();

    CLI::App* train_eval =
        app.add_subcommand("train-eval", "cross-validated training and evaluation");
    add_common(train_eval, true);

    CLI::App* rfe = app.add_subcommand("rfe", "recursive feature elimination");
    add_common(rfe, true);
    rfe->add_option("--step", opt.rfe_step, "features dropped per round");

    CLI::App* correlate = app.add_subcommand("correlate", "Pearson correlation matrix");
    add_common(correlate, false);
    correlate->add_option("--features", opt.features, "feature CSV path");

    CLI::App* multiclass = app.add_subcommand("multiclass", "malware family experiments");
    add_common(multiclass, true);

    CLI::App* boost_demo = app.add_subcommand("boost-demo", "weak-classifier boosting curves");
    add_common(boost_demo, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            SynthArgs args;
            args.spec.n_benign = opt.n_benign;
            args.spec.n_malicious = opt.n_malicious;
            args.spec.min_flows = opt.min_flows;
            args.spec.max_flows = opt.max_flows;
            args.spec.seed = opt.seed;
            args.out_dir = opt.out;
            return zeekml::cli::cmd_synth(args);
        }
        if (extract->parsed()) {
            ExtractArgs args;
            args.manifest = opt.manifest;
            args.out_dir = opt.out;
            return zeekml::cli::cmd_extract(args);
        }
        if (train_eval->parsed()) {
            TrainEvalArgs args;
            args.features_csv = opt.features;
            args.out_dir = opt.out;
            args.model = parse_model(opt.model);
            args.n_estimators = opt_estimators(opt);
            args.max_depth = opt_depth(opt);
            args.n_folds = opt.folds;
            args.seed = opt.seed;
            return zeekml::cli::cmd_train_eval(args);
        }
        if (rfe->parsed()) {
            RfeArgs args;
            args.features_csv = opt.features;
            args.out_dir = opt.out;
            args.model = parse_model(opt.model);
            args.n_estimators = opt_estimators(opt);
            args.n_folds = opt.folds;
            args.step = opt.rfe_step;
            args.seed = opt.seed;
            return zeekml::cli::cmd_rfe(args);
        }
        if (correlate->parsed()) {
            CorrelateArgs args;
            args.features_csv = opt.features;
            args.out_dir = opt.out;
            return zeekml::cli::cmd_correlate(args);
        }
        if (multiclass->parsed()) {
            MulticlassArgs args;
            args.features_csv = opt.features;
            args.out_dir = opt.out;
            args.model = parse_model(opt.model);
            args.n_estimators = opt_estimators(opt);
            args.n_folds = opt.folds;
            args.seed = opt.seed;
            return zeekml::cli::cmd_multiclass(args);
        }
        if (boost_demo->parsed()) {
            BoostDemoArgs args;
            args.out_dir = opt.out;
            args.seed = opt.seed;
            return zeekml::cli::cmd_boost_demo(args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
